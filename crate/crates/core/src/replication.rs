//! The di-/tri- replication of presentations: `u ↦ u^H`, replicated
//! identity systems with zero identities, and replicated morphisms.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lincomb::{Identity, IdentitySystem, LinComb};
use crate::morphism::Morphism;
use crate::signature::{Mode, Signature};
use crate::subset::Subset;
use crate::term::{OpSym, Term};

fn check_h(m: usize, h: Subset, mode: Mode) -> Result<()> {
    if mode == Mode::Plain {
        return Err(Error::BadDecoration("decoration needs mode di or tri".into()));
    }
    if h.is_empty() || !h.is_subset_of(Subset::full(m as u32)) {
        return Err(Error::BadDecoration(format!("{h} is not a nonempty subset of 1..={m}")));
    }
    if mode == Mode::Di && !h.is_singleton() {
        return Err(Error::BadDecoration(format!("mode di needs a singleton, got {h}")));
    }
    Ok(())
}

/// `u^H`: every node `f(v_1..v_n)` becomes `f^K` where `K` collects the
/// children containing an emphasized leaf. Children outside `K` are
/// decorated by their leftmost leaf; unary nodes stay undecorated.
pub fn decorate_term(u: &Term, h: Subset, mode: Mode) -> Result<Term> {
    u.check_multilinear()?;
    check_h(u.degree(), h, mode)?;
    Ok(decorate_rec(u, h))
}

fn decorate_rec(u: &Term, h: Subset) -> Term {
    match u {
        Term::Var(i) => Term::Var(*i),
        Term::App(op, args) if args.len() == 1 => {
            Term::App(op.erased(), vec![decorate_rec(&args[0], h)])
        }
        Term::App(op, args) => {
            let mut k = Subset::EMPTY;
            let children = args
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let hi = h.intersection(v.var_set());
                    if hi.is_empty() {
                        decorate_rec(v, Subset::singleton(v.first_leaf()))
                    } else {
                        k.insert(i as u32 + 1);
                        decorate_rec(v, hi)
                    }
                })
                .collect();
            Term::App(op.with_deco(Some(k)), children)
        }
    }
}

pub fn decorate(l: &LinComb, h: Subset, mode: Mode) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (t, c) in l.iter() {
        out.add_term(decorate_term(t, h, mode)?, c.clone());
    }
    Ok(out)
}

pub fn erase_decorations(l: &LinComb) -> LinComb {
    l.erase()
}

/// Unary ops must be flagged as derivations or endomorphisms.
pub fn check_unary_flags(sig: &Signature) -> Result<()> {
    for op in &sig.ops {
        if op.arity == 1 && !(op.flags.derivation || op.flags.endomorphism) {
            return Err(Error::UnflaggedUnary(op.name.clone()));
        }
    }
    Ok(())
}

pub fn decorated_name(mode: Mode, name: &str) -> String {
    format!("{mode}_{name}")
}

/// `S^(2)(M)` or `S^(3)(M)`: every `Φ^H` plus the zero identities.
pub fn replicate_identities(s: &IdentitySystem, mode: Mode) -> Result<IdentitySystem> {
    if s.signature.mode != Mode::Plain {
        return Err(Error::SignatureMismatch(format!(
            "`{}` is already decorated",
            s.signature.name
        )));
    }
    check_unary_flags(&s.signature)?;
    let sig = s
        .signature
        .decorated(mode, &decorated_name(mode, &s.signature.name))?;
    let jobs: Vec<(&Identity, Subset)> = s
        .identities
        .iter()
        .flat_map(|id| mode.subsets(id.degree).into_iter().map(move |h| (id, h)))
        .collect();
    let mut ids = jobs
        .par_iter()
        .map(|(id, h)| {
            let lhs = decorate(&id.lhs, *h, mode)?;
            Ok(Identity {
                name: format!("{}^{}", id.name, h),
                degree: id.degree,
                lhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    ids.extend(zero_identities(&sig)?);
    IdentitySystem::new(&decorated_name(mode, &s.name), sig, ids).map(IdentitySystem::dedup)
}

/// `f^H(.., g^{S0}(..), ..) - f^H(.., g^Q(..), ..)` for every slot `i ∉ H`,
/// where `S0` is the first decoration of `g` and `Q` ranges over the others.
pub fn zero_identities(sig: &Signature) -> Result<Vec<Identity>> {
    let mode = sig.mode;
    let mut out = Vec::new();
    for f in &sig.ops {
        if f.arity < 2 {
            continue;
        }
        for h in mode.subsets(f.arity) {
            for i in (1..=f.arity as u32).filter(|i| !h.contains(*i)) {
                for g in &sig.ops {
                    let decos = mode.decorations(g.arity);
                    let Some((s0, rest)) = decos.split_first() else { continue };
                    let n = f.arity + g.arity - 1;
                    let build = |d: Option<Subset>| {
                        let mut next = 1u32;
                        let mut children = Vec::with_capacity(f.arity);
                        for slot in 1..=f.arity as u32 {
                            if slot == i {
                                let inner: Vec<Term> =
                                    (next..next + g.arity as u32).map(Term::var).collect();
                                next += g.arity as u32;
                                children.push(Term::App(OpSym::plain(&g.name).with_deco(d), inner));
                            } else {
                                children.push(Term::var(next));
                                next += 1;
                            }
                        }
                        Term::App(OpSym::decorated(&f.name, h), children)
                    };
                    for q in rest {
                        let lhs = LinComb::from_term(build(*s0)).sub(&LinComb::from_term(build(*q)));
                        let name = format!(
                            "zero_{}^{}_{}_{}^{}",
                            f.name,
                            h,
                            i,
                            g.name,
                            q.expect("decorated")
                        );
                        out.push(Identity::new(&name, n, lhs)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(id ⊗ ω)(f^H) = ω(f)^H`.
pub fn replicate_morphism(w: &Morphism, mode: Mode) -> Result<Morphism> {
    if w.source.mode != Mode::Plain || w.target.mode != Mode::Plain {
        return Err(Error::SignatureMismatch(format!(
            "morphism `{}` is already decorated",
            w.name
        )));
    }
    let source = w.source.decorated(mode, &decorated_name(mode, &w.source.name))?;
    let target = w.target.decorated(mode, &decorated_name(mode, &w.target.name))?;
    let mut images = std::collections::BTreeMap::new();
    for (sym, _) in source.symbols() {
        let h = sym.deco.unwrap_or(Subset::singleton(1));
        let img = w.image(&sym.erased())?;
        images.insert(sym, decorate(img, h, mode)?);
    }
    Morphism::new(&decorated_name(mode, &w.name), source, target, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::signature::OpDecl;

    fn x(i: u32) -> Term {
        Term::var(i)
    }
    fn f(a: Term, b: Term) -> Term {
        Term::app("f", vec![a, b])
    }
    fn fd(h: &[u32], a: Term, b: Term) -> Term {
        Term::deco("f", Subset::from_elements(h.iter().copied()).unwrap(), vec![a, b])
    }
    fn s(e: &[u32]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn decorate_examples() {
        assert_eq!(decorate_term(&f(x(1), x(2)), s(&[1, 2]), Mode::Tri).unwrap(), fd(&[1, 2], x(1), x(2)));
        let u = f(x(1), f(x(2), x(3)));
        assert_eq!(
            decorate_term(&u, s(&[2]), Mode::Tri).unwrap(),
            fd(&[2], x(1), fd(&[1], x(2), x(3)))
        );
        assert_eq!(
            decorate_term(&u, s(&[1, 3]), Mode::Tri).unwrap(),
            fd(&[1, 2], x(1), fd(&[2], x(2), x(3)))
        );
        assert!(decorate_term(&u, s(&[1, 3]), Mode::Di).is_err());
        assert!(decorate_term(&u, s(&[4]), Mode::Tri).is_err());
    }

    #[test]
    fn erase_merges() {
        let l = LinComb::normalize([(fd(&[1], x(1), x(2)), q(1)), (fd(&[2], x(1), x(2)), q(1))]);
        assert_eq!(erase_decorations(&l), LinComb::monomial(f(x(1), x(2)), q(2)));
    }

    #[test]
    fn zero_identity_instance() {
        let sig = Signature::new("b", vec![OpDecl::new("f", 2)])
            .unwrap()
            .decorated(Mode::Di, "di_b")
            .unwrap();
        let z = zero_identities(&sig).unwrap();
        // f^{1} with slot 2 and f^{2} with slot 1, one Q each.
        assert_eq!(z.len(), 2);
        let expected = LinComb::from_term(fd(&[1], x(1), fd(&[1], x(2), x(3))))
            .sub(&LinComb::from_term(fd(&[1], x(1), fd(&[2], x(2), x(3)))));
        assert!(z.iter().any(|i| i.lhs == expected));
    }

    #[test]
    fn unflagged_unary_rejected() {
        let sig = Signature::new("u", vec![OpDecl::new("f", 2), OpDecl::new("d", 1)]).unwrap();
        let sys = IdentitySystem::new("e", sig, vec![]).unwrap();
        assert!(matches!(replicate_identities(&sys, Mode::Tri), Err(Error::UnflaggedUnary(_))));
    }
}
