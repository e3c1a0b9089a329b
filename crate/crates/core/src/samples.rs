//! Sample algebras and operators for property suites: a small zoo per variety,
//! operator families of each kind, random basis changes and a seeded suite of
//! derived-algebra cases.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::operator::{check_operator, derived_from_morphism, DerivedMode, OperatorKind};
use crate::algebra::{add_scaled, basis_tuples, unit_vec, zero_vec, FiniteAlgebra, LinearOperator, Vector};
use crate::dsl::Workspace;
use crate::error::{Error, Result};
use crate::enumerate::monomials;
use crate::lincomb::{IdentitySystem, LinComb};
use crate::presets;
use crate::rational::{q, Q};
use crate::replication::{replicate_identities, replicate_morphism};
use crate::signature::{Mode, Signature};
use crate::splitting::{split_identities, SplitMode};
use crate::term::OpSym;

fn bin(ws: &Workspace) -> Signature {
    ws.signature("bin").expect("preset").clone()
}

fn mul_table(name: &str, sig: Signature, basis: &[&str], entries: &[(usize, usize, &[(usize, i64)])]) -> FiniteAlgebra {
    let dim = basis.len();
    let mut a = FiniteAlgebra::zero(name, sig, basis.iter().map(|s| s.to_string()).collect());
    let m = OpSym::plain("m");
    for (i, j, v) in entries {
        let mut out = zero_vec(dim);
        for (k, c) in v.iter() {
            out[*k] = q(*c);
        }
        a.set(&m, &[*i, *j], out).expect("static table");
    }
    a
}

/// `E_ij E_jk = E_ik` on the given list of matrix units.
fn matrix_units(name: &str, sig: Signature, units: &[(usize, usize)]) -> FiniteAlgebra {
    let basis: Vec<String> = units.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    let mut a = FiniteAlgebra::zero(name, sig, basis);
    let dim = units.len();
    let m = OpSym::plain("m");
    for (x, &(i, j)) in units.iter().enumerate() {
        for (y, &(k, l)) in units.iter().enumerate() {
            if j == k {
                if let Some(z) = units.iter().position(|&u| u == (i, l)) {
                    a.set(&m, &[x, y], unit_vec(dim, z)).expect("static table");
                }
            }
        }
    }
    a
}

/// Associative algebras: the field, dual numbers, `k×k`, upper triangular 2×2,
/// strictly upper triangular 3×3, `M_2`, and the left-zero band `ab = a`.
pub fn as_zoo() -> Vec<FiniteAlgebra> {
    let ws = presets::workspace().expect("presets");
    let s = bin(&ws);
    vec![
        mul_table("k", s.clone(), &["u"], &[(0, 0, &[(0, 1)])]),
        mul_table(
            "dual",
            s.clone(),
            &["one", "eps"],
            &[(0, 0, &[(0, 1)]), (0, 1, &[(1, 1)]), (1, 0, &[(1, 1)])],
        ),
        mul_table("kxk", s.clone(), &["p", "q"], &[(0, 0, &[(0, 1)]), (1, 1, &[(1, 1)])]),
        matrix_units("ut2", s.clone(), &[(1, 1), (1, 2), (2, 2)]),
        matrix_units("sut3", s.clone(), &[(1, 2), (1, 3), (2, 3)]),
        matrix_units("m2", s.clone(), &[(1, 1), (1, 2), (2, 1), (2, 2)]),
        mul_table(
            "lzero",
            s,
            &["a", "b"],
            &[(0, 0, &[(0, 1)]), (0, 1, &[(0, 1)]), (1, 0, &[(1, 1)]), (1, 1, &[(1, 1)])],
        ),
    ]
}

/// Lie algebras: commutator algebras of the associative zoo, plus the
/// cross product on `k^3` and the Heisenberg algebra.
pub fn lie_zoo() -> Vec<FiniteAlgebra> {
    let ws = presets::workspace().expect("presets");
    let comm = ws.morphism("commutator").expect("preset");
    let mut out: Vec<FiniteAlgebra> = as_zoo()
        .iter()
        .filter(|a| ["ut2", "sut3", "m2"].contains(&a.name.as_str()))
        .map(|a| {
            let mut l = derived_from_morphism(a, comm).expect("commutator");
            l.name = format!("{}_lie", a.name);
            l
        })
        .collect();
    let sig = ws.signature("lie_sig").expect("preset").clone();
    let br = OpSym::plain("br");
    let mut cross = FiniteAlgebra::zero("so3", sig.clone(), vec!["i".into(), "j".into(), "k".into()]);
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        cross.set(&br, &[a, b], unit_vec(3, c)).expect("static table");
        let mut neg = zero_vec(3);
        neg[c] = -Q::one();
        cross.set(&br, &[b, a], neg).expect("static table");
    }
    out.push(cross);
    let mut heis = FiniteAlgebra::zero("heis", sig, vec!["x".into(), "y".into(), "z".into()]);
    heis.set(&br, &[0, 1], unit_vec(3, 2)).expect("static table");
    heis.set(&br, &[1, 0], vec![q(0), q(0), q(-1)]).expect("static table");
    out.push(heis);
    out
}

/// Commutative associative algebras with a derivation squaring to zero.
pub fn comd_zoo() -> Vec<FiniteAlgebra> {
    let ws = presets::workspace().expect("presets");
    let sig = ws.signature("comd").expect("preset").clone();
    let (m, d) = (OpSym::plain("m"), OpSym::plain("d"));
    // k[x]/(x³) with d x = x²
    let mut e = FiniteAlgebra::zero("trunc3", sig.clone(), vec!["one".into(), "x".into(), "x2".into()]);
    for i in 0..3 {
        for j in 0..3 - i {
            e.set(&m, &[i, j], unit_vec(3, i + j)).expect("static table");
        }
    }
    e.set(&d, &[1], unit_vec(3, 2)).expect("static table");
    let mut dual = FiniteAlgebra::zero("dual_d0", sig, vec!["one".into(), "eps".into()]);
    dual.set(&m, &[0, 0], unit_vec(2, 0)).expect("static table");
    dual.set(&m, &[0, 1], unit_vec(2, 1)).expect("static table");
    dual.set(&m, &[1, 0], unit_vec(2, 1)).expect("static table");
    vec![ws.algebra("N3D").expect("preset").clone(), e, dual]
}

/// `B[ε] = B ⊗ k[ε]/(ε²)` (basis `b`, then `eps_b`) with the weight-0
/// Rota–Baxter operator `b + εc ↦ εb`.
pub fn dual_extension(b: &FiniteAlgebra) -> Result<(FiniteAlgebra, LinearOperator)> {
    let d = b.dim();
    let names = b.basis.iter().cloned().chain(b.basis.iter().map(|x| format!("eps_{x}"))).collect();
    let mut out = FiniteAlgebra::zero(&format!("{}_eps", b.name), b.signature.clone(), names);
    for (sym, n) in b.signature.symbols() {
        for idx in basis_tuples(2 * d, n) {
            let eps: Vec<usize> = (0..n).filter(|&i| idx[i] >= d).collect();
            if eps.len() > 1 {
                continue;
            }
            let base: Vec<usize> = idx.iter().map(|k| k % d).collect();
            let v = b.product_basis(&sym, &base)?;
            let mut w = zero_vec(2 * d);
            let off = if eps.is_empty() { 0 } else { d };
            w[off..off + d].clone_from_slice(v);
            out.set(&sym, &idx, w)?;
        }
    }
    let images: Vec<Vector> = (0..2 * d).map(|k| if k < d { unit_vec(2 * d, k + d) } else { zero_vec(2 * d) }).collect();
    Ok((out, LinearOperator::from_images("eps_shift", &images)?))
}

/// `A × B` over a shared signature, basis of `A` first.
pub fn direct_product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    a.signature.ensure_same(&b.signature)?;
    let (da, db) = (a.dim(), b.dim());
    let names = a
        .basis
        .iter()
        .map(|x| format!("l_{x}"))
        .chain(b.basis.iter().map(|x| format!("r_{x}")))
        .collect();
    let mut out = FiniteAlgebra::zero(&format!("{}_x_{}", a.name, b.name), a.signature.clone(), names);
    for (sym, n) in a.signature.symbols() {
        for idx in basis_tuples(da, n) {
            let mut w = zero_vec(da + db);
            w[..da].clone_from_slice(a.product_basis(&sym, &idx)?);
            out.set(&sym, &idx, w)?;
        }
        for idx in basis_tuples(db, n) {
            let mut w = zero_vec(da + db);
            w[da..].clone_from_slice(b.product_basis(&sym, &idx)?);
            let shifted: Vec<usize> = idx.iter().map(|k| k + da).collect();
            out.set(&sym, &shifted, w)?;
        }
    }
    Ok(out)
}

/// `B × B` with the idempotent endomorphism `(x, y) ↦ (x, x)`, which is
/// homomorphic averaging (and in particular averaging).
pub fn diagonal_projection(b: &FiniteAlgebra) -> Result<(FiniteAlgebra, LinearOperator)> {
    let p = direct_product(b, b)?;
    let d = b.dim();
    let images: Vec<Vector> = (0..2 * d)
        .map(|k| {
            let mut v = zero_vec(2 * d);
            if k < d {
                v[k] = Q::one();
                v[k + d] = Q::one();
            }
            v
        })
        .collect();
    Ok((p, LinearOperator::from_images("diag", &images)?))
}

/// `k^n` with componentwise product and the averaging operator that replaces
/// each coordinate by the mean over its block.
pub fn block_averaging(blocks: &[usize]) -> Result<(FiniteAlgebra, LinearOperator)> {
    let ws = presets::workspace()?;
    let n: usize = blocks.iter().sum();
    let basis = FiniteAlgebra::numbered_basis("u", n);
    let mut a = FiniteAlgebra::zero(&format!("k{n}"), bin(&ws), basis);
    let m = OpSym::plain("m");
    for i in 0..n {
        a.set(&m, &[i, i], unit_vec(n, i))?;
    }
    let mut images = vec![zero_vec(n); n];
    let mut start = 0;
    for &len in blocks {
        let c = Q::new(1.into(), (len as i64).into());
        for j in start..start + len {
            for i in start..start + len {
                images[j][i] = c.clone();
            }
        }
        start += len;
    }
    Ok((a, LinearOperator::from_images("block_mean", &images)?))
}

/// `-id`, a Rota–Baxter operator of weight 1 on any algebra.
pub fn negative_identity(dim: usize) -> LinearOperator {
    LinearOperator::scaled_identity("neg_id", dim, &q(-1))
}

/// Every operator on an algebra of dimension ≤ 2 with entries in {-1, 0, 1}
/// that passes the check for `kind`.
pub fn small_operators(a: &FiniteAlgebra, kind: &OperatorKind) -> Result<Vec<LinearOperator>> {
    let d = a.dim();
    if d > 2 {
        return Err(Error::Dimension(format!("exhaustive search needs dimension ≤ 2, got {d}")));
    }
    let cells = d * d;
    let mut out = Vec::new();
    for code in 0..3usize.pow(cells as u32) {
        let mut c = code;
        let mut matrix = vec![zero_vec(d); d];
        for k in 0..cells {
            matrix[k / d][k % d] = q(c as i64 % 3 - 1);
            c /= 3;
        }
        let l = LinearOperator::new(&format!("op{code}"), matrix)?;
        if check_operator(a, &l, kind)?.passed {
            out.push(l);
        }
    }
    Ok(out)
}

/// Exact inverse by Gauss–Jordan elimination, or `None` if singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain(unit_vec(n, i)).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = -a[r][col].clone();
                let pivot_row = a[col].clone();
                add_scaled(&mut a[r], &pivot_row, &f);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// A random invertible integer matrix `L·U` with unit diagonals and small entries.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let mut l = vec![zero_vec(n); n];
    let mut u = vec![zero_vec(n); n];
    for i in 0..n {
        l[i][i] = Q::one();
        u[i][i] = if rng.gen_bool(0.5) { Q::one() } else { -Q::one() };
        for j in 0..i {
            l[i][j] = q(rng.gen_range(-2..=2));
            u[j][i] = q(rng.gen_range(-2..=2));
        }
    }
    let p = mat_mul(&l, &u);
    let p_inv = invert(&p).expect("unimodular");
    (p, p_inv)
}

/// The same algebra and operator in a random basis.
pub fn random_basis_change(
    a: &FiniteAlgebra,
    l: &LinearOperator,
    rng: &mut impl Rng,
) -> Result<(FiniteAlgebra, LinearOperator)> {
    let (p, p_inv) = random_unimodular(a.dim(), rng);
    let b = a.change_basis(&p, &p_inv)?;
    let matrix = mat_mul(&p_inv, &mat_mul(&l.matrix, &p));
    Ok((b, LinearOperator::new(&l.name, matrix)?))
}

/// One derived-algebra case: `algebra` lies in the variety of `system`, and
/// `operator` has the kind `mode` requires.
#[derive(Clone, Debug)]
pub struct Case {
    pub label: String,
    pub algebra: FiniteAlgebra,
    pub operator: LinearOperator,
    pub mode: DerivedMode,
    pub system: IdentitySystem,
}

impl Case {
    /// The system a derived algebra must satisfy: replicated for di/tri, split for pre/post.
    pub fn target_system(&self) -> Result<IdentitySystem> {
        match self.mode {
            DerivedMode::Di => replicate_identities(&self.system, Mode::Di),
            DerivedMode::Tri => replicate_identities(&self.system, Mode::Tri),
            DerivedMode::Pre => split_identities(&self.system, SplitMode::Pre),
            DerivedMode::Post => split_identities(&self.system, SplitMode::Post),
        }
    }
}

/// Base algebras with their varieties.
fn bases(ws: &Workspace) -> Vec<(FiniteAlgebra, IdentitySystem)> {
    let mut out = Vec::new();
    for a in as_zoo() {
        out.push((a, ws.system("as").expect("preset").clone()));
    }
    for a in lie_zoo() {
        out.push((a, ws.system("lie").expect("preset").clone()));
    }
    for a in comd_zoo() {
        out.push((a, ws.system("comd_axioms").expect("preset").clone()));
    }
    out
}

/// An operator of the kind `mode` requires, with the algebra it acts on.
fn operator_for(
    base: &FiniteAlgebra,
    mode: DerivedMode,
    rng: &mut impl Rng,
) -> Result<(FiniteAlgebra, LinearOperator)> {
    match mode {
        DerivedMode::Di | DerivedMode::Tri => {
            if base.signature.name == "bin" && base.dim() <= 2 && rng.gen_bool(0.3) {
                let kind = mode.required_kind();
                let ops = small_operators(base, &kind)?;
                if !ops.is_empty() {
                    let k = rng.gen_range(0..ops.len());
                    return Ok((base.clone(), ops[k].clone()));
                }
            }
            if mode == DerivedMode::Di && base.signature.name == "bin" && rng.gen_bool(0.3) {
                let blocks = [1 + rng.gen_range(0..2), 1 + rng.gen_range(0..3)];
                return block_averaging(&blocks);
            }
            diagonal_projection(base)
        }
        DerivedMode::Pre => dual_extension(base),
        DerivedMode::Post => Ok((base.clone(), negative_identity(base.dim()))),
    }
}

/// `count` cases cycling through di, tri, pre and post over the zoos, each in
/// a random basis drawn from `seed`.
pub fn randomized_suite(seed: u64, count: usize) -> Result<Vec<Case>> {
    let ws = presets::workspace()?;
    let bases = bases(&ws);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes = [DerivedMode::Di, DerivedMode::Tri, DerivedMode::Pre, DerivedMode::Post];
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mode = modes[i % 4];
        let (base, system) = &bases[rng.gen_range(0..bases.len())];
        let (a, l) = operator_for(base, mode, &mut rng)?;
        let (a, l) = if a.dim() <= 6 { random_basis_change(&a, &l, &mut rng)? } else { (a, l) };
        out.push(Case {
            label: format!("{i}: {} {} {}", mode, a.name, l.name),
            algebra: a,
            operator: l,
            mode,
            system: system.clone(),
        });
    }
    Ok(out)
}

/// Images in tri-As of every tri-Jordan monomial of degree `n` under the
/// replicated anticommutator `j ↦ x1x2 + x2x1`. Together over all degrees
/// these span the special tri-Jordan polynomials.
pub fn tri_jordan_images(n: usize) -> Result<Vec<LinComb>> {
    let ws = presets::workspace()?;
    let w = replicate_morphism(ws.morphism("anticommutator")?, Mode::Tri)?;
    monomials(&w.source, n).iter().map(|u| w.apply_term(u)).collect()
}

/// Every map from `n` variables to `g` values, in lexicographic order.
pub fn assignments(n: usize, g: usize) -> Vec<Vec<usize>> {
    basis_tuples(g, n)
}
