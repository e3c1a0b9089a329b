//! The pre-/post- splitting of presentations: coefficients `Φ_(H)`,
//! split identity systems and split morphisms.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lincomb::{Identity, IdentitySystem, LinComb};
use crate::morphism::Morphism;
use crate::signature::{Mode, Signature};
use crate::subset::Subset;
use crate::term::Term;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    Pre,
    Post,
}

impl SplitMode {
    /// Decoration mode of the split signature.
    pub fn decoration(self) -> Mode {
        match self {
            SplitMode::Pre => Mode::Di,
            SplitMode::Post => Mode::Tri,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplitMode::Pre => "pre",
            SplitMode::Post => "post",
        }
    }
}

impl fmt::Display for SplitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Φ_(H)` for every admissible `H`, in subset order.
#[derive(Clone, PartialEq, Debug)]
pub struct SplitCoefficients {
    pub degree: usize,
    pub mode: SplitMode,
    pub entries: Vec<(Subset, LinComb)>,
}

impl SplitCoefficients {
    pub fn get(&self, h: Subset) -> Option<&LinComb> {
        self.entries.iter().find(|(k, _)| *k == h).map(|(_, l)| l)
    }
}

/// Subsets of `vars` a non-emphasized child may carry: all of them (post)
/// or singletons (pre).
fn free_choices(vars: Subset, mode: SplitMode) -> Vec<Subset> {
    match mode {
        SplitMode::Post => vars.nonempty_subsets_of(),
        SplitMode::Pre => vars.iter().map(Subset::singleton).collect(),
    }
}

/// `u_(H)` for a monomial `u` and `H ⊆ vars(u)`, both in global leaf names.
///
/// For `u = f(v_1..v_m)` the set `H` determines `K` (children meeting `H`)
/// and `H_k = H ∩ vars(v_k)` for `k ∈ K`; the remaining children are summed
/// over all their admissible subsets. Unary nodes pass through.
pub fn split_term(u: &Term, h: Subset, mode: SplitMode) -> LinComb {
    match u {
        Term::Var(j) => {
            if h == Subset::singleton(*j) {
                LinComb::from_term(u.clone())
            } else {
                LinComb::zero()
            }
        }
        Term::App(op, args) if args.len() == 1 => {
            let inner = split_term(&args[0], h, mode);
            LinComb::apply_op(&op.erased(), &[inner])
        }
        Term::App(op, args) => {
            let mut k = Subset::EMPTY;
            for (i, v) in args.iter().enumerate() {
                if !h.intersection(v.var_set()).is_empty() {
                    k.insert(i as u32 + 1);
                }
            }
            if k.is_empty() || (mode == SplitMode::Pre && !k.is_singleton()) {
                return LinComb::zero();
            }
            let children: Vec<LinComb> = args
                .iter()
                .map(|v| {
                    let vars = v.var_set();
                    let hi = h.intersection(vars);
                    if hi.is_empty() {
                        let mut sum = LinComb::zero();
                        for c in free_choices(vars, mode) {
                            sum = sum.add(&split_term(v, c, mode));
                        }
                        sum
                    } else {
                        split_term(v, hi, mode)
                    }
                })
                .collect();
            LinComb::apply_op(&op.with_deco(Some(k)), &children)
        }
    }
}

pub fn split_lincomb(phi: &LinComb, h: Subset, mode: SplitMode) -> LinComb {
    phi.flat_map(|t| split_term(t, h, mode))
}

pub fn split_coefficients(phi: &LinComb, mode: SplitMode) -> Result<SplitCoefficients> {
    let Some(n) = phi.degree() else {
        return Ok(SplitCoefficients { degree: 0, mode, entries: vec![] });
    };
    phi.check_multilinear(n)?;
    if phi.terms().any(|t| t.ops().iter().any(|o| o.deco.is_some())) {
        return Err(Error::SignatureMismatch("split_coefficients expects plain terms".into()));
    }
    let entries = mode
        .decoration()
        .subsets(n)
        .into_iter()
        .map(|h| (h, split_lincomb(phi, h, mode)))
        .collect();
    Ok(SplitCoefficients { degree: n, mode, entries })
}

pub fn split_name(mode: SplitMode, name: &str) -> String {
    format!("{mode}_{name}")
}

/// `{Φ_(H)}`: the defining identities of pre-M / post-M. Zero coefficients are dropped.
pub fn split_identities(s: &IdentitySystem, mode: SplitMode) -> Result<IdentitySystem> {
    if s.signature.mode != Mode::Plain {
        return Err(Error::SignatureMismatch(format!(
            "`{}` is already decorated",
            s.signature.name
        )));
    }
    let sig = s
        .signature
        .decorated(mode.decoration(), &split_name(mode, &s.signature.name))?;
    let per_identity = s
        .identities
        .par_iter()
        .map(|id| {
            let coeffs = split_coefficients(&id.lhs, mode)?;
            Ok(coeffs
                .entries
                .into_iter()
                .map(|(h, lhs)| Identity {
                    name: format!("{}_{}", id.name, h),
                    degree: id.degree,
                    lhs,
                })
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let ids = per_identity.into_iter().flatten().collect();
    IdentitySystem::new(&split_name(mode, &s.name), sig, ids).map(IdentitySystem::dedup)
}

/// `f^H ↦ ω(f)_(H)`.
pub fn split_morphism(w: &Morphism, mode: SplitMode) -> Result<Morphism> {
    if w.source.mode != Mode::Plain || w.target.mode != Mode::Plain {
        return Err(Error::SignatureMismatch(format!(
            "morphism `{}` is already decorated",
            w.name
        )));
    }
    let dm = mode.decoration();
    let source = w.source.decorated(dm, &split_name(mode, &w.source.name))?;
    let target = w.target.decorated(dm, &split_name(mode, &w.target.name))?;
    let mut images = BTreeMap::new();
    for (sym, _) in source.symbols() {
        let h = sym.deco.unwrap_or(Subset::singleton(1));
        let img = w.image(&sym.erased())?;
        images.insert(sym, split_lincomb(img, h, mode));
    }
    Morphism::new(&split_name(mode, &w.name), source, target, images)
}

/// `Φ` with every non-unary `f` replaced by `Σ_K f^K` (singleton `K` for pre).
pub fn expand_by_sum(phi: &LinComb, mode: SplitMode) -> LinComb {
    phi.flat_map(|t| expand_term(t, mode))
}

fn expand_term(t: &Term, mode: SplitMode) -> LinComb {
    match t {
        Term::Var(_) => LinComb::from_term(t.clone()),
        Term::App(op, args) => {
            let children: Vec<LinComb> = args.iter().map(|a| expand_term(a, mode)).collect();
            if args.len() == 1 {
                return LinComb::apply_op(&op.erased(), &children);
            }
            let mut out = LinComb::zero();
            for k in mode.decoration().subsets(args.len()) {
                out = out.add(&LinComb::apply_op(&op.with_deco(Some(k)), &children));
            }
            out
        }
    }
}

/// `Σ_H Φ_(H)` equals `Φ` with `f ↦ Σ_K f^K`.
pub fn reconstruction_holds(phi: &LinComb, mode: SplitMode) -> Result<bool> {
    let coeffs = split_coefficients(phi, mode)?;
    let mut sum = LinComb::zero();
    for (_, l) in &coeffs.entries {
        sum = sum.add(l);
    }
    Ok(sum == expand_by_sum(phi, mode))
}

/// The split signature of a plain signature.
pub fn split_signature(sig: &Signature, mode: SplitMode) -> Result<Signature> {
    sig.decorated(mode.decoration(), &split_name(mode, &sig.name))
}
