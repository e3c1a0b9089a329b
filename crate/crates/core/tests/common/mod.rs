#![allow(dead_code)]

use decotree::algebra::basis_tuples;
use decotree::enumerate::monomials;
use decotree::rational::q;
use decotree::{FiniteAlgebra, LinComb, OpDecl, Signature, Term, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn x(i: u32) -> Term {
    Term::var(i)
}

pub fn m(a: Term, b: Term) -> Term {
    Term::app("m", vec![a, b])
}

pub fn bin() -> Signature {
    Signature::new("bin", vec![OpDecl::new("m", 2)]).unwrap()
}

/// Two binary operations, enough to tell grafting slots apart.
pub fn fg() -> Signature {
    Signature::new("fg", vec![OpDecl::new("f", 2), OpDecl::new("g", 2)]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly chosen multilinear monomial of degree `n`.
pub fn random_monomial(sig: &Signature, n: usize, r: &mut impl Rng) -> Term {
    let all = monomials(sig, n);
    all[r.gen_range(0..all.len())].clone()
}

/// Up to `k` monomials of degree `n` with small integer coefficients.
pub fn random_lincomb(sig: &Signature, n: usize, k: usize, r: &mut impl Rng) -> LinComb {
    let mut l = LinComb::zero();
    for _ in 0..k {
        let c = r.gen_range(-3i64..=3);
        l.add_term(random_monomial(sig, n, r), q(c));
    }
    l
}

/// Structure constants drawn from {-1, 0, 1}, unary ops left zero.
pub fn random_algebra(name: &str, sig: &Signature, dim: usize, r: &mut impl Rng) -> FiniteAlgebra {
    let mut a = FiniteAlgebra::zero(name, sig.clone(), FiniteAlgebra::numbered_basis("b", dim));
    for (sym, n) in sig.symbols() {
        if n < 2 {
            continue;
        }
        for idx in basis_tuples(dim, n) {
            let v: Vec<Q> = (0..dim).map(|_| q(r.gen_range(-1i64..=1))).collect();
            a.set(&sym, &idx, v).unwrap();
        }
    }
    a
}

pub fn random_vector(dim: usize, r: &mut impl Rng) -> Vec<Q> {
    (0..dim).map(|_| q(r.gen_range(-2i64..=2))).collect()
}
