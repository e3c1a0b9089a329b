//! Algebra constructions: `C⊗A`, `C⊠T`, the hat and tilde algebras, and the
//! embedding of a decorated algebra into `C₂⊗T̃`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::builtin::c2;
use super::{add_scaled, basis_tuples, is_zero_vec, unit_vec, zero_vec, FiniteAlgebra, LinearOperator, Vector};
use crate::comtrias::{self, Corolla};
use crate::error::{Error, Result};
use crate::linalg::{integer_row, Echelon, Row};
use crate::rational::Q;
use crate::replication::decorated_name;
use crate::signature::Mode;
use crate::subset::Subset;
use crate::term::OpSym;

/// Refuses `C` unless it satisfies the ComTrias axioms (tri) or the Perm axioms (di),
/// which makes corolla values independent of the chosen representative.
pub fn validate_model(c: &FiniteAlgebra, mode: Mode) -> Result<()> {
    let axioms = match mode {
        Mode::Tri => comtrias::comtrias_axioms(),
        Mode::Di => comtrias::perm_axioms(),
        Mode::Plain => return Err(Error::NotAModel("mode must be di or tri".into())),
    };
    if !c.signature.same_ops(&axioms.signature) {
        return Err(Error::NotAModel(format!(
            "`{}` is not over the {} signature",
            c.name, axioms.signature.name
        )));
    }
    let r = c.check_identities(&axioms)?;
    match r.witness {
        None => Ok(()),
        Some(w) => Err(Error::NotAModel(format!(
            "`{}` fails `{}` at ({})",
            c.name,
            w.identity,
            w.tuple.join(", ")
        ))),
    }
}

/// `e^(n)_H(c_1..c_n)` on basis elements of a validated model `C`.
struct CorollaTable {
    dim: usize,
    values: BTreeMap<(usize, Subset), Vec<Vector>>,
}

impl CorollaTable {
    fn build(c: &FiniteAlgebra, mode: Mode, arities: &[usize]) -> Result<Self> {
        validate_model(c, mode)?;
        let dim = c.dim();
        let mut values = BTreeMap::new();
        for &n in arities {
            for h in mode.subsets(n) {
                if values.contains_key(&(n, h)) {
                    continue;
                }
                let rep = comtrias::representative(Corolla::new(n, h)?);
                let l = crate::lincomb::LinComb::from_term(rep);
                let vals = basis_tuples(dim, n)
                    .iter()
                    .map(|idx| c.evaluate_on_basis(&l, idx))
                    .collect::<Result<Vec<_>>>()?;
                values.insert((n, h), vals);
            }
        }
        Ok(CorollaTable { dim, values })
    }

    fn get(&self, n: usize, h: Subset, idx: &[usize]) -> &Vector {
        &self.values[&(n, h)][super::flat_index(self.dim, idx)]
    }
}

fn tensor_vec(c: &[Q], a: &[Q]) -> Vector {
    let mut out = Vec::with_capacity(c.len() * a.len());
    for x in c {
        for y in a {
            out.push(x * y);
        }
    }
    out
}

fn tensor_names(c: &FiniteAlgebra, a: &FiniteAlgebra) -> Vec<String> {
    c.basis
        .iter()
        .flat_map(|x| a.basis.iter().map(move |y| format!("{x}_{y}")))
        .collect()
}

fn arities(a: &FiniteAlgebra) -> Vec<usize> {
    let mut v: Vec<usize> = a.signature.ops.iter().map(|o| o.arity).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `C⊗A` over `Σ^(mode)`: `f^H(c_1⊗a_1, …) = e^(n)_H(c_1, …) ⊗ f(a_1, …)`.
/// Basis element `c⊗a` has index `c·dim A + a`.
pub fn tensor_replicated(c: &FiniteAlgebra, a: &FiniteAlgebra, mode: Mode) -> Result<FiniteAlgebra> {
    if a.signature.mode != Mode::Plain {
        return Err(Error::SignatureMismatch(format!("`{}` must be over a plain signature", a.name)));
    }
    let table = CorollaTable::build(c, mode, &arities(a))?;
    let sig = a.signature.decorated(mode, &decorated_name(mode, &a.signature.name))?;
    let (dc, da) = (c.dim(), a.dim());
    let mut out = FiniteAlgebra::zero(&format!("{}_x_{}", c.name, a.name), sig.clone(), tensor_names(c, a));
    for (sym, n) in sig.symbols() {
        let plain = sym.erased();
        for idx in basis_tuples(dc * da, n) {
            let ci: Vec<usize> = idx.iter().map(|k| k / da).collect();
            let ai: Vec<usize> = idx.iter().map(|k| k % da).collect();
            let fa = a.product_basis(&plain, &ai)?;
            let v = match sym.deco {
                Some(h) => tensor_vec(table.get(n, h, &ci), fa),
                // Unary ops act on the second factor.
                None => tensor_vec(&unit_vec(dc, ci[0]), fa),
            };
            out.set(&sym, &idx, v)?;
        }
    }
    Ok(out)
}

/// `C⊠T` over the plain signature: `f(c⊗u) = Σ_H e^(n)_H(c) ⊗ f^H(u)`.
/// `C` models ComTrias when `T` is tri-decorated and Perm when it is di-decorated.
pub fn box_product(c: &FiniteAlgebra, t: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let mode = t.signature.mode;
    if mode == Mode::Plain {
        return Err(Error::SignatureMismatch(format!("`{}` must be over a decorated signature", t.name)));
    }
    let table = CorollaTable::build(c, mode, &arities(t))?;
    let sig = t.signature.plain_base();
    let (dc, dt) = (c.dim(), t.dim());
    let mut out = FiniteAlgebra::zero(&format!("{}_box_{}", c.name, t.name), sig.clone(), tensor_names(c, t));
    for (sym, n) in sig.symbols() {
        for idx in basis_tuples(dc * dt, n) {
            let ci: Vec<usize> = idx.iter().map(|k| k / dt).collect();
            let ti: Vec<usize> = idx.iter().map(|k| k % dt).collect();
            let mut v = zero_vec(dc * dt);
            if n == 1 {
                v = tensor_vec(&unit_vec(dc, ci[0]), t.product_basis(&sym, &ti)?);
            } else {
                for h in mode.subsets(n) {
                    let part = tensor_vec(table.get(n, h, &ci), t.product_basis(&sym.with_deco(Some(h)), &ti)?);
                    add_scaled(&mut v, &part, &Q::one());
                }
            }
            out.set(&sym, &idx, v)?;
        }
    }
    Ok(out)
}

/// `T̂ = T ⊕ T′` over the plain signature. Basis: `T` first, then the primed copy
/// (names suffixed `_p`). On a basis tuple with primed positions `P`:
/// `P = ∅` gives `Σ_H f^H(a)`, otherwise `f^P(a)′`, which is zero when `f^P`
/// is not a symbol of the mode (di and `|P| > 1`).
pub fn hat(t: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    let mode = t.signature.mode;
    if mode == Mode::Plain {
        return Err(Error::SignatureMismatch(format!("`{}` must be over a decorated signature", t.name)));
    }
    let dt = t.dim();
    let sig = t.signature.plain_base();
    let names = t
        .basis
        .iter()
        .cloned()
        .chain(t.basis.iter().map(|b| format!("{b}_p")))
        .collect();
    let mut out = FiniteAlgebra::zero(&format!("{}_hat", t.name), sig.clone(), names);
    for (sym, n) in sig.symbols() {
        for idx in basis_tuples(2 * dt, n) {
            let ti: Vec<usize> = idx.iter().map(|k| k % dt).collect();
            let mut primed = Subset::EMPTY;
            for (i, k) in idx.iter().enumerate() {
                if *k >= dt {
                    primed.insert(i as u32 + 1);
                }
            }
            let mut v = zero_vec(2 * dt);
            if n == 1 {
                let r = t.product_basis(&sym, &ti)?;
                let off = if primed.is_empty() { 0 } else { dt };
                v[off..off + dt].clone_from_slice(r);
            } else if primed.is_empty() {
                for h in mode.subsets(n) {
                    add_scaled(&mut v[..dt], t.product_basis(&sym.with_deco(Some(h)), &ti)?, &Q::one());
                }
            } else if mode.allows(primed) {
                v[dt..].clone_from_slice(t.product_basis(&sym.with_deco(Some(primed)), &ti)?);
            }
            out.set(&sym, &idx, v)?;
        }
    }
    Ok(out)
}

/// The operator `τ(e1⊗a) = −e1⊗a`, `τ(e2⊗a) = e1⊗a` on `C₂⊠T` (basis `c·dim T + a`).
pub fn rb_hat_operator(t_dim: usize) -> LinearOperator {
    let dim = 2 * t_dim;
    let images: Vec<Vector> = (0..dim)
        .map(|k| {
            let mut v = zero_vec(dim);
            if k < t_dim {
                v[k] = -Q::one();
            } else {
                v[k - t_dim] = Q::one();
            }
            v
        })
        .collect();
    LinearOperator::from_images("tau", &images).expect("square")
}

/// `C₂⊠T` together with `τ`.
pub fn c2_box_with_tau(t: &FiniteAlgebra) -> Result<(FiniteAlgebra, LinearOperator)> {
    let b = box_product(&c2(), t)?;
    Ok((b, rb_hat_operator(t.dim())))
}

fn to_row(v: &[Q]) -> Row {
    let entries: Vec<(u32, Q)> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, c.clone()))
        .collect();
    integer_row(&entries)
}

/// A subspace given by its reduced echelon basis; complements use the non-pivot coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub dim_ambient: usize,
    /// Reduced rows scaled so each pivot entry is 1.
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    fn from_echelon(e: &Echelon, dim: usize) -> Self {
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for r in e.rref() {
            let p = r[0].0 as usize;
            let lead = Q::from_integer(r[0].1.clone());
            let mut v = zero_vec(dim);
            for (c, x) in &r {
                v[*c as usize] = Q::from_integer(x.clone()) / &lead;
            }
            rows.push(v);
            pivots.push(p);
        }
        Subspace { dim_ambient: dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Indices of the standard basis vectors spanning a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim_ambient).filter(|k| !self.pivots.contains(k)).collect()
    }

    /// `v` minus its component along the subspace, in the complement coordinates.
    pub fn reduce(&self, v: &[Q]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                add_scaled(&mut w, row, &-c);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        is_zero_vec(&self.reduce(v))
    }
}

/// Smallest subspace containing `gens` and closed under every operation with
/// basis elements in the remaining slots.
pub fn ideal_closure(t: &FiniteAlgebra, gens: Vec<Vector>) -> Result<Subspace> {
    let dim = t.dim();
    let mut e = Echelon::new();
    let mut queue: Vec<Vector> = Vec::new();
    for g in gens {
        if e.insert(to_row(&g)) {
            queue.push(g);
        }
    }
    let symbols = t.signature.symbols();
    while let Some(v) = queue.pop() {
        for (sym, n) in &symbols {
            for slot in 0..*n {
                for others in basis_tuples(dim, n - 1) {
                    let mut args: Vec<Vector> = others.iter().map(|&k| unit_vec(dim, k)).collect();
                    args.insert(slot, v.clone());
                    let refs: Vec<&[Q]> = args.iter().map(|a| a.as_slice()).collect();
                    let w = t.product(sym, &refs)?;
                    if !is_zero_vec(&w) && e.insert(to_row(&w)) {
                        queue.push(w);
                    }
                }
            }
        }
    }
    Ok(Subspace::from_echelon(&e, dim))
}

/// `T₀`: the ideal generated by `f^H(a) − f^K(a)`.
pub fn decoration_ideal(t: &FiniteAlgebra) -> Result<Subspace> {
    let dim = t.dim();
    let mut gens = Vec::new();
    for op in &t.signature.ops {
        let decos = t.signature.mode.decorations(op.arity);
        let Some((first, rest)) = decos.split_first() else { continue };
        for idx in basis_tuples(dim, op.arity) {
            let base = t.product_basis(&OpSym::plain(&op.name).with_deco(*first), &idx)?;
            for d in rest {
                let mut v = t.product_basis(&OpSym::plain(&op.name).with_deco(*d), &idx)?.clone();
                add_scaled(&mut v, base, &-Q::one());
                if !is_zero_vec(&v) {
                    gens.push(v);
                }
            }
        }
    }
    ideal_closure(t, gens)
}

/// `T̃ = T̄ ⊕ T` with the data needed to map into it.
#[derive(Clone, Debug)]
pub struct Tilde {
    pub algebra: FiniteAlgebra,
    pub t0: Subspace,
    /// Basis indices of `T` whose classes form the basis of `T̄`.
    pub lifts: Vec<usize>,
}

impl Tilde {
    pub fn dim_bar(&self) -> usize {
        self.lifts.len()
    }

    /// Coordinates of `ā` in the `T̄` summand.
    pub fn project(&self, v: &[Q]) -> Vector {
        let w = self.t0.reduce(v);
        self.lifts.iter().map(|&k| w[k].clone()).collect()
    }

    /// `ā ↦ (ā, 0)` and `b ↦ (0, b)` as coordinates in `T̃`.
    pub fn embed_bar(&self, v: &[Q]) -> Vector {
        let mut out = self.project(v);
        out.extend(zero_vec(v.len()));
        out
    }

    pub fn embed_t(&self, v: &[Q]) -> Vector {
        let mut out = zero_vec(self.dim_bar());
        out.extend_from_slice(v);
        out
    }
}

/// `T̃` with the `T̄` component computed through `f^{1}`.
pub fn tilde(t: &FiniteAlgebra) -> Result<Tilde> {
    tilde_with(t, |_| Subset::singleton(1))
}

/// `T̃`, choosing `K = k(arity)` for the `T̄` component.
pub fn tilde_with(t: &FiniteAlgebra, k: impl Fn(usize) -> Subset) -> Result<Tilde> {
    let mode = t.signature.mode;
    if mode == Mode::Plain {
        return Err(Error::SignatureMismatch(format!("`{}` must be over a decorated signature", t.name)));
    }
    let dim = t.dim();
    let t0 = decoration_ideal(t)?;
    let lifts = t0.complement();
    let db = lifts.len();
    let sig = t.signature.plain_base();
    let names = lifts
        .iter()
        .map(|&j| format!("{}_bar", t.basis[j]))
        .chain(t.basis.iter().cloned())
        .collect();
    let mut out = FiniteAlgebra::zero(&format!("{}_tilde", t.name), sig.clone(), names);
    let mut tl = Tilde { algebra: out.clone(), t0, lifts };
    for (sym, n) in sig.symbols() {
        for idx in basis_tuples(db + dim, n) {
            // T-type positions and the underlying basis elements of T.
            let mut b = Subset::EMPTY;
            let ti: Vec<usize> = idx
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    if x >= db {
                        b.insert(i as u32 + 1);
                        x - db
                    } else {
                        tl.lifts[x]
                    }
                })
                .collect();
            let v = if n == 1 {
                let r = t.product_basis(&sym, &ti)?;
                if b.is_empty() {
                    tl.embed_bar(r)
                } else {
                    tl.embed_t(r)
                }
            } else if b.is_empty() {
                let kk = k(n);
                tl.embed_bar(t.product_basis(&sym.with_deco(Some(kk)), &ti)?)
            } else if mode.allows(b) {
                tl.embed_t(t.product_basis(&sym.with_deco(Some(b)), &ti)?)
            } else {
                zero_vec(db + dim)
            };
            out.set(&sym, &idx, v)?;
        }
    }
    tl.algebra = out;
    Ok(tl)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub dim: usize,
    pub dim_t0: usize,
    pub dim_tilde: usize,
    pub injective: bool,
    pub homomorphism: bool,
    pub checked: usize,
    pub failure: Option<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.homomorphism
    }
}

/// The map `a ↦ e1⊗ā + e2⊗a` from `T` into `C₂⊗T̃`, as images of basis vectors.
pub struct Embedding {
    pub tilde: Tilde,
    pub target: FiniteAlgebra,
    pub images: Vec<Vector>,
}

impl Embedding {
    pub fn map(&self, v: &[Q]) -> Vector {
        let mut out = zero_vec(self.target.dim());
        for (c, img) in v.iter().zip(&self.images) {
            add_scaled(&mut out, img, c);
        }
        out
    }
}

pub fn canonical_embedding(t: &FiniteAlgebra) -> Result<(Embedding, EmbeddingReport)> {
    if t.signature.mode != Mode::Tri {
        return Err(Error::SignatureMismatch(format!(
            "`{}` must be over a tri-decorated signature",
            t.name
        )));
    }
    let tl = tilde(t)?;
    let target = tensor_replicated(&c2(), &tl.algebra, Mode::Tri)?;
    let dim = t.dim();
    let dtil = tl.algebra.dim();
    let images: Vec<Vector> = (0..dim)
        .map(|j| {
            let e = unit_vec(dim, j);
            let mut v = tl.embed_bar(&e);
            v.extend(tl.embed_t(&e));
            debug_assert_eq!(v.len(), 2 * dtil);
            v
        })
        .collect();
    let emb = Embedding { tilde: tl, target, images };
    let injective = crate::linalg::rank_dense(&emb.images) == dim;
    let mut report = EmbeddingReport {
        dim,
        dim_t0: emb.tilde.t0.dim(),
        dim_tilde: dtil,
        injective,
        homomorphism: true,
        checked: 0,
        failure: None,
    };
    'outer: for (sym, n) in t.signature.symbols() {
        for idx in basis_tuples(dim, n) {
            report.checked += 1;
            let lhs = emb.map(t.product_basis(&sym, &idx)?);
            let args: Vec<&[Q]> = idx.iter().map(|&k| emb.images[k].as_slice()).collect();
            let rhs = emb.target.product(&sym, &args)?;
            if lhs != rhs {
                report.homomorphism = false;
                let names: Vec<&str> = idx.iter().map(|&k| t.basis[k].as_str()).collect();
                report.failure = Some(format!("`{sym}` on ({})", names.join(", ")));
                break 'outer;
            }
        }
    }
    Ok((emb, report))
}

/// Checks that the matrix (columns are images of basis vectors of `a`) is a
/// homomorphism `a → b`; returns the first failing symbol and tuple.
pub fn homomorphism_failure(a: &FiniteAlgebra, b: &FiniteAlgebra, phi: &LinearMap) -> Result<Option<String>> {
    if !a.signature.same_ops(&b.signature) {
        return Err(Error::SignatureMismatch(format!("`{}` and `{}` differ", a.name, b.name)));
    }
    for (sym, n) in a.signature.symbols() {
        for idx in basis_tuples(a.dim(), n) {
            let lhs = phi.apply(a.product_basis(&sym, &idx)?);
            let imgs: Vec<Vector> = idx.iter().map(|&k| phi.image(k)).collect();
            let refs: Vec<&[Q]> = imgs.iter().map(|v| v.as_slice()).collect();
            if lhs != b.product(&sym, &refs)? {
                let names: Vec<&str> = idx.iter().map(|&k| a.basis[k].as_str()).collect();
                return Ok(Some(format!("`{sym}` on ({})", names.join(", "))));
            }
        }
    }
    Ok(None)
}

/// A linear map between spaces of possibly different dimension; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub rows: usize,
    pub images: Vec<Vector>,
}

impl LinearMap {
    pub fn from_images(rows: usize, images: Vec<Vector>) -> Result<Self> {
        if images.iter().any(|v| v.len() != rows) {
            return Err(Error::Dimension("image of wrong length".into()));
        }
        Ok(LinearMap { rows, images })
    }

    pub fn image(&self, j: usize) -> Vector {
        self.images[j].clone()
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        let mut out = zero_vec(self.rows);
        for (c, img) in v.iter().zip(&self.images) {
            add_scaled(&mut out, img, c);
        }
        out
    }
}

/// For a homomorphism `φ: T₁ → T₂` of decorated algebras, the induced map
/// `T̃₁ → T̃₂` (`ā ↦ φ(a)‾`, `b ↦ φ(b)`), checked to be a homomorphism.
pub fn functorial_tilde(t1: &FiniteAlgebra, t2: &FiniteAlgebra, phi: &LinearMap) -> Result<(LinearMap, Option<String>)> {
    if let Some(f) = homomorphism_failure(t1, t2, phi)? {
        return Err(Error::Structural(format!("not a homomorphism: {f}")));
    }
    let (a, b) = (tilde(t1)?, tilde(t2)?);
    let mut images = Vec::new();
    for &j in &a.lifts {
        images.push(b.embed_bar(&phi.image(j)));
    }
    for j in 0..t1.dim() {
        images.push(b.embed_t(&phi.image(j)));
    }
    let m = LinearMap::from_images(b.algebra.dim(), images)?;
    let failure = homomorphism_failure(&a.algebra, &b.algebra, &m)?;
    Ok((m, failure))
}

/// `e^(n)_H` of a ComTrias model evaluated on given elements.
pub fn corolla_value(c: &FiniteAlgebra, corolla: Corolla, args: &[Vector]) -> Result<Vector> {
    let rep = comtrias::representative(corolla);
    c.evaluate(&crate::lincomb::LinComb::from_term(rep), args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{binary_signature, comtrias_field, perm_field};
    use crate::lincomb::{Identity, IdentitySystem, LinComb};
    use crate::rational::q;
    use crate::replication::replicate_identities;
    use crate::term::Term;

    fn field_bin() -> FiniteAlgebra {
        let mut a = FiniteAlgebra::zero("k", binary_signature(), vec!["u".into()]);
        a.set(&OpSym::plain("m"), &[0, 0], vec![q(1)]).unwrap();
        a
    }

    fn assoc() -> IdentitySystem {
        let m = |a, b| Term::app("m", vec![a, b]);
        let x = Term::var;
        let l = LinComb::from_term(m(m(x(1), x(2)), x(3))).sub(&LinComb::from_term(m(x(1), m(x(2), x(3)))));
        IdentitySystem::new("as", binary_signature(), vec![Identity::from_lincomb("assoc", l).unwrap()]).unwrap()
    }

    #[test]
    fn c2_tensor_field() {
        let t = tensor_replicated(&c2(), &field_bin(), Mode::Tri).unwrap();
        let f2 = OpSym::decorated("m", Subset::singleton(2));
        assert_eq!(t.product_basis(&f2, &[0, 1]).unwrap(), &vec![q(0), q(1)]);
        let s = replicate_identities(&assoc(), Mode::Tri).unwrap();
        assert!(t.check_identities(&s).unwrap().passed);
    }

    #[test]
    fn box_with_field_sums_decorations() {
        let t = tensor_replicated(&c2(), &field_bin(), Mode::Tri).unwrap();
        let b = box_product(&comtrias_field(), &t).unwrap();
        let m = OpSym::plain("m");
        for idx in basis_tuples(2, 2) {
            let mut sum = zero_vec(2);
            for h in Mode::Tri.subsets(2) {
                add_scaled(&mut sum, t.product_basis(&m.with_deco(Some(h)), &idx).unwrap(), &q(1));
            }
            assert_eq!(b.product_basis(&m, &idx).unwrap(), &sum);
        }
        let d = tensor_replicated(&perm_field(), &field_bin(), Mode::Di).unwrap();
        assert!(box_product(&perm_field(), &d).is_ok());
        assert!(box_product(&c2(), &d).is_err());
    }

    #[test]
    fn hat_equals_box() {
        let t = tensor_replicated(&c2(), &field_bin(), Mode::Tri).unwrap();
        let h = hat(&t).unwrap();
        let b = box_product(&c2(), &t).unwrap();
        assert_eq!(h.tables, b.tables);
    }

    #[test]
    fn tilde_of_undecorated_doubles() {
        let t = tensor_replicated(&comtrias_field(), &field_bin(), Mode::Tri).unwrap();
        let tl = tilde(&t).unwrap();
        assert_eq!(tl.t0.dim(), 0);
        assert_eq!(tl.algebra.dim(), 2);
        let (_, r) = canonical_embedding(&t).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn embedding_of_c2_tensor() {
        let t = tensor_replicated(&c2(), &field_bin(), Mode::Tri).unwrap();
        let (_, r) = canonical_embedding(&t).unwrap();
        assert!(r.passed(), "{r:?}");
        let k2 = tilde_with(&t, |n| Subset::singleton(n as u32)).unwrap();
        assert_eq!(tilde(&t).unwrap().algebra.tables, k2.algebra.tables);
    }
}
