//! Averaging and Rota–Baxter operators, and the algebras they induce.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{add_scaled, basis_tuples, unit_vec, zero_vec, FiniteAlgebra, LinearOperator, Vector};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::rational::{fmt_q, Q};
use crate::replication::decorated_name;
use crate::signature::{Mode, Signature};
use crate::splitting::{split_signature, SplitMode};
use crate::subset::Subset;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OperatorKind {
    /// `f(ta_1..ta_n) = t f(ta_1, .., a_i, .., ta_n)` for every `i`.
    Averaging,
    /// `f(ta_1..ta_n) = t f(a^H)` for every nonempty `H`.
    HomAveraging,
    /// `f(τa_1..τa_n) = Σ_H λ^{|H|-1} τ f(a^H)`.
    RotaBaxter(Q),
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorKind::Averaging => f.write_str("averaging"),
            OperatorKind::HomAveraging => f.write_str("hom-averaging"),
            OperatorKind::RotaBaxter(w) => write!(f, "rb(weight {})", fmt_q(w)),
        }
    }
}

/// Where a derived algebra lives.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivedMode {
    Di,
    Tri,
    Pre,
    Post,
}

impl DerivedMode {
    pub fn decoration(self) -> Mode {
        match self {
            DerivedMode::Di | DerivedMode::Pre => Mode::Di,
            DerivedMode::Tri | DerivedMode::Post => Mode::Tri,
        }
    }

    /// The operator condition under which the derived algebra is guaranteed
    /// to satisfy the replicated (di/tri) or split (pre/post) identities.
    pub fn required_kind(self) -> OperatorKind {
        match self {
            DerivedMode::Di => OperatorKind::Averaging,
            DerivedMode::Tri => OperatorKind::HomAveraging,
            DerivedMode::Pre => OperatorKind::RotaBaxter(Q::zero()),
            DerivedMode::Post => OperatorKind::RotaBaxter(Q::one()),
        }
    }

    pub fn signature(self, plain: &Signature) -> Result<Signature> {
        match self {
            DerivedMode::Di => plain.decorated(Mode::Di, &decorated_name(Mode::Di, &plain.name)),
            DerivedMode::Tri => plain.decorated(Mode::Tri, &decorated_name(Mode::Tri, &plain.name)),
            DerivedMode::Pre => split_signature(plain, SplitMode::Pre),
            DerivedMode::Post => split_signature(plain, SplitMode::Post),
        }
    }
}

impl fmt::Display for DerivedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivedMode::Di => "di",
            DerivedMode::Tri => "tri",
            DerivedMode::Pre => "pre",
            DerivedMode::Post => "post",
        })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OperatorReport {
    pub kind: String,
    pub passed: bool,
    pub checked: usize,
    pub failure: Option<String>,
}

/// `a^H_i = a_i` for `i ∈ H`, `L a_i` otherwise.
fn emphasized(l: &LinearOperator, args: &[Vector], h: Subset) -> Vec<Vector> {
    args.iter()
        .enumerate()
        .map(|(i, a)| if h.contains(i as u32 + 1) { a.clone() } else { l.apply(a) })
        .collect()
}

fn product_of(a: &FiniteAlgebra, sym: &crate::term::OpSym, args: &[Vector]) -> Result<Vector> {
    let refs: Vec<&[Q]> = args.iter().map(|v| v.as_slice()).collect();
    a.product(sym, &refs)
}

/// First violation of the operator identity on a basis tuple, if any.
fn violation(
    a: &FiniteAlgebra,
    l: &LinearOperator,
    kind: &OperatorKind,
    sym: &crate::term::OpSym,
    idx: &[usize],
) -> Result<Option<String>> {
    let dim = a.dim();
    let n = idx.len();
    let args: Vec<Vector> = idx.iter().map(|&k| unit_vec(dim, k)).collect();
    let lhs = product_of(a, sym, &emphasized(l, &args, Subset::EMPTY))?;
    let describe = |what: String| {
        let names: Vec<&str> = idx.iter().map(|&k| a.basis[k].as_str()).collect();
        format!("`{sym}` on ({}): {what}", names.join(", "))
    };
    match kind {
        OperatorKind::Averaging => {
            for i in 1..=n as u32 {
                let rhs = l.apply(&product_of(a, sym, &emphasized(l, &args, Subset::singleton(i)))?);
                if rhs != lhs {
                    return Ok(Some(describe(format!("slot {i}"))));
                }
            }
        }
        OperatorKind::HomAveraging => {
            for h in Subset::nonempty_subsets(n as u32) {
                let rhs = l.apply(&product_of(a, sym, &emphasized(l, &args, h))?);
                if rhs != lhs {
                    return Ok(Some(describe(format!("H = {h}"))));
                }
            }
        }
        OperatorKind::RotaBaxter(w) => {
            let mut rhs = zero_vec(dim);
            for h in Subset::nonempty_subsets(n as u32) {
                let mut c = Q::one();
                for _ in 1..h.len() {
                    c *= w;
                }
                if c.is_zero() {
                    continue;
                }
                let term = l.apply(&product_of(a, sym, &emphasized(l, &args, h))?);
                add_scaled(&mut rhs, &term, &c);
            }
            if rhs != lhs {
                return Ok(Some(describe(format!(
                    "{} vs {}",
                    a.format_vector(&lhs),
                    a.format_vector(&rhs)
                ))));
            }
        }
    }
    Ok(None)
}

/// Verifies the operator identity for every operation on every basis tuple.
pub fn check_operator(a: &FiniteAlgebra, l: &LinearOperator, kind: &OperatorKind) -> Result<OperatorReport> {
    if l.dim() != a.dim() {
        return Err(Error::Dimension(format!(
            "operator `{}` has size {}, algebra `{}` has dimension {}",
            l.name,
            l.dim(),
            a.name,
            a.dim()
        )));
    }
    let jobs: Vec<(crate::term::OpSym, Vec<usize>)> = a
        .signature
        .symbols()
        .into_iter()
        .flat_map(|(sym, n)| basis_tuples(a.dim(), n).into_iter().map(move |idx| (sym.clone(), idx)))
        .collect();
    let first = jobs
        .par_iter()
        .map(|(sym, idx)| violation(a, l, kind, sym, idx))
        .find_first(|r| !matches!(r, Ok(None)));
    let failure = match first {
        Some(r) => r?,
        None => None,
    };
    Ok(OperatorReport {
        kind: kind.to_string(),
        passed: failure.is_none(),
        checked: jobs.len(),
        failure,
    })
}

/// `A^(t)` or `A^(τ)`: `f^H(a_1..a_n) = f(a^H_1..a^H_n)`. The operator must pass
/// the condition matching `mode` (averaging for di, homomorphic averaging for
/// tri, Rota–Baxter of weight 0 for pre and of weight 1 for post).
pub fn derived_from_operator(a: &FiniteAlgebra, l: &LinearOperator, mode: DerivedMode) -> Result<FiniteAlgebra> {
    if a.signature.mode != Mode::Plain {
        return Err(Error::SignatureMismatch(format!("`{}` must be over a plain signature", a.name)));
    }
    let kind = mode.required_kind();
    let report = check_operator(a, l, &kind)?;
    if let Some(f) = report.failure {
        return Err(Error::OperatorCheck(format!("`{}` is not {kind} on `{}`: {f}", l.name, a.name)));
    }
    derive_unchecked(a, l, mode)
}

/// As [`derived_from_operator`] without the operator check.
pub fn derive_unchecked(a: &FiniteAlgebra, l: &LinearOperator, mode: DerivedMode) -> Result<FiniteAlgebra> {
    let sig = mode.signature(&a.signature)?;
    let dim = a.dim();
    let mut out = FiniteAlgebra::zero(&format!("{}_{}_{}", a.name, mode, l.name), sig.clone(), a.basis.clone());
    for (sym, n) in sig.symbols() {
        let h = sym.deco.unwrap_or(Subset::singleton(1));
        let plain = sym.erased();
        for idx in basis_tuples(dim, n) {
            let args: Vec<Vector> = idx.iter().map(|&k| unit_vec(dim, k)).collect();
            let v = product_of(a, &plain, &emphasized(l, &args, h))?;
            out.set(&sym, &idx, v)?;
        }
    }
    Ok(out)
}

/// `A^(ω)`: each generator of the source acts as its image under `ω`.
pub fn derived_from_morphism(a: &FiniteAlgebra, w: &Morphism) -> Result<FiniteAlgebra> {
    if !a.signature.same_ops(&w.target) {
        return Err(Error::SignatureMismatch(format!(
            "`{}` is over `{}`, morphism `{}` targets `{}`",
            a.name, a.signature.name, w.name, w.target.name
        )));
    }
    let dim = a.dim();
    let mut out = FiniteAlgebra::zero(&format!("{}_{}", a.name, w.name), w.source.clone(), a.basis.clone());
    for (sym, n) in w.source.symbols() {
        let img = w.image(&sym)?;
        for idx in basis_tuples(dim, n) {
            let v = a.evaluate_on_basis(img, &idx)?;
            out.set(&sym, &idx, v)?;
        }
    }
    Ok(out)
}
