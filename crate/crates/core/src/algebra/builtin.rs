//! Small algebras that come up repeatedly.

use num_traits::One;

use super::{unit_vec, zero_vec, FiniteAlgebra, LinearOperator};
use crate::comtrias::{self, PERP, VDASH};
use crate::error::Result;
use crate::rational::{q, Q};
use crate::signature::{OpDecl, Signature};
use crate::term::OpSym;

/// The ComTrias algebra with basis `e1, e2`:
/// `e1⊥e1 = e1`, `e2⊥e2 = e2`, `e1⊢e1 = e1`, `e1⊢e2 = e2`, all other products zero.
pub fn c2() -> FiniteAlgebra {
    let mut a = FiniteAlgebra::zero("C2", comtrias::signature(), vec!["e1".into(), "e2".into()]);
    let (v, p) = (OpSym::plain(VDASH), OpSym::plain(PERP));
    for (sym, idx, out) in [(&p, [0, 0], 0), (&p, [1, 1], 1), (&v, [0, 0], 0), (&v, [0, 1], 1)] {
        a.set(sym, &idx, unit_vec(2, out)).expect("static table");
    }
    a
}

/// The base field as a ComTrias algebra: both products are multiplication.
pub fn comtrias_field() -> FiniteAlgebra {
    let mut a = FiniteAlgebra::zero("k_ct", comtrias::signature(), vec!["u".into()]);
    a.set(&OpSym::plain(VDASH), &[0, 0], vec![q(1)]).expect("static table");
    a.set(&OpSym::plain(PERP), &[0, 0], vec![q(1)]).expect("static table");
    a
}

/// The base field as a Perm algebra.
pub fn perm_field() -> FiniteAlgebra {
    let mut a = FiniteAlgebra::zero("k_perm", comtrias::perm_signature(), vec!["u".into()]);
    a.set(&OpSym::plain(VDASH), &[0, 0], vec![q(1)]).expect("static table");
    a
}

/// The 2-dimensional Perm algebra `p_i ⊢ p_j = p_j`.
pub fn perm_right_units() -> FiniteAlgebra {
    let mut a = FiniteAlgebra::zero("P2", comtrias::perm_signature(), vec!["p1".into(), "p2".into()]);
    for i in 0..2 {
        for j in 0..2 {
            a.set(&OpSym::plain(VDASH), &[i, j], unit_vec(2, j)).expect("static table");
        }
    }
    a
}

pub fn binary_signature() -> Signature {
    Signature::new("bin", vec![OpDecl::new("m", 2)]).expect("static signature")
}

fn popcount_sign(mask: u32, below: u32) -> bool {
    (mask & below).count_ones() % 2 == 1
}

/// Basis masks of the exterior algebra on `g` generators: by degree, then lexicographically.
fn exterior_masks(g: u32) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << g).collect();
    masks.sort_by_key(|&m| {
        let elems: Vec<u32> = (0..g).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), elems)
    });
    masks
}

/// Product of two basis monomials, as (sign, mask), or `None` if a generator repeats.
fn wedge(a: u32, b: u32) -> Option<(bool, u32)> {
    if a & b != 0 {
        return None;
    }
    // Move each generator of `b` left past the larger generators of `a`.
    let mut neg = false;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let above = !((2u32 << i) - 1);
        neg ^= popcount_sign(a, above);
    }
    Some((neg, a | b))
}

/// The Grassmann algebra on `ξ̄_1..ξ̄_n, ξ_1..ξ_n` (with unit, dimension `4^n`)
/// over one binary op `m`, generators in that order. Basis names join
/// generator names `zb1 .. zbn, z1 .. zn` with `_`; the unit is `one`.
pub fn grassmann(n: usize) -> Result<FiniteAlgebra> {
    let g = 2 * n as u32;
    let gen_names: Vec<String> = (1..=n)
        .map(|i| format!("zb{i}"))
        .chain((1..=n).map(|i| format!("z{i}")))
        .collect();
    let masks = exterior_masks(g);
    let index: std::collections::HashMap<u32, usize> =
        masks.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let names = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "one".to_string()
            } else {
                (0..g)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| gen_names[i as usize].clone())
                    .collect::<Vec<_>>()
                    .join("_")
            }
        })
        .collect();
    let dim = masks.len();
    let mut a = FiniteAlgebra::zero(&format!("A{n}"), binary_signature(), names);
    let m = OpSym::plain("m");
    for (i, &x) in masks.iter().enumerate() {
        for (j, &y) in masks.iter().enumerate() {
            if let Some((neg, z)) = wedge(x, y) {
                let mut v = zero_vec(dim);
                v[index[&z]] = if neg { -Q::one() } else { Q::one() };
                a.set(&m, &[i, j], v)?;
            }
        }
    }
    Ok(a)
}

/// The idempotent endomorphism `ξ_i ↦ ξ̄_i`, `ξ̄_i ↦ ξ̄_i` of [`grassmann`].
pub fn grassmann_bar(n: usize) -> LinearOperator {
    let g = 2 * n as u32;
    let masks = exterior_masks(g);
    let index: std::collections::HashMap<u32, usize> =
        masks.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let dim = masks.len();
    let images: Vec<Vec<Q>> = masks
        .iter()
        .map(|&mask| {
            // Replace each ξ_i by ξ̄_i, multiplying left to right.
            let mut acc: Option<(bool, u32)> = Some((false, 0));
            for i in (0..g).filter(|i| mask >> i & 1 == 1) {
                let gen = if i >= n as u32 { i - n as u32 } else { i };
                acc = acc.and_then(|(s, m)| wedge(m, 1 << gen).map(|(t, z)| (s ^ t, z)));
            }
            let mut v = zero_vec(dim);
            if let Some((neg, z)) = acc {
                v[index[&z]] = if neg { -Q::one() } else { Q::one() };
            }
            v
        })
        .collect();
    LinearOperator::from_images("bar", &images).expect("square")
}

/// Coordinates of a product of generators, given by basis names, in [`grassmann`].
pub fn grassmann_monomial(a: &FiniteAlgebra, gens: &[&str]) -> Result<Vec<Q>> {
    let m = OpSym::plain("m");
    let mut acc = unit_vec(a.dim(), a.basis_index("one").unwrap_or(0));
    for g in gens {
        let k = a.basis_index(g).ok_or_else(|| crate::error::Error::UnknownReference {
            kind: "basis element",
            name: g.to_string(),
        })?;
        acc = a.product(&m, &[&acc, &unit_vec(a.dim(), k)])?;
    }
    Ok(acc)
}
