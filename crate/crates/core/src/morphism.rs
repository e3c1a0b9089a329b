//! Morphisms of presentations: each generator of the source goes to a
//! multilinear combination over the target of the same degree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lincomb::{substitute, LinComb};
use crate::signature::Signature;
use crate::term::{OpSym, Term};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub name: String,
    pub source: Signature,
    pub target: Signature,
    pub images: BTreeMap<OpSym, LinComb>,
}

impl Morphism {
    pub fn new(
        name: &str,
        source: Signature,
        target: Signature,
        images: BTreeMap<OpSym, LinComb>,
    ) -> Result<Self> {
        let m = Morphism {
            name: name.to_string(),
            source,
            target,
            images,
        };
        m.validate()?;
        Ok(m)
    }

    /// Every source symbol has an image of matching degree over the target.
    pub fn validate(&self) -> Result<()> {
        let symbols = self.source.symbols();
        for (sym, arity) in &symbols {
            let img = self.images.get(sym).ok_or_else(|| {
                Error::Structural(format!("morphism `{}` has no image for `{sym}`", self.name))
            })?;
            img.check_multilinear(*arity)?;
            for t in img.terms() {
                self.target.check_term(t)?;
            }
        }
        for sym in self.images.keys() {
            if !symbols.iter().any(|(s, _)| s == sym) {
                return Err(Error::UnknownReference {
                    kind: "op",
                    name: sym.to_string(),
                });
            }
        }
        Ok(())
    }

    /// The identity morphism of a signature.
    pub fn identity(sig: &Signature) -> Morphism {
        let images = sig
            .symbols()
            .into_iter()
            .map(|(sym, arity)| {
                let t = Term::App(sym.clone(), (1..=arity as u32).map(Term::var).collect());
                (sym, LinComb::from_term(t))
            })
            .collect();
        Morphism {
            name: format!("id_{}", sig.name),
            source: sig.clone(),
            target: sig.clone(),
            images,
        }
    }

    pub fn image(&self, sym: &OpSym) -> Result<&LinComb> {
        self.images.get(sym).ok_or_else(|| Error::UnknownReference {
            kind: "op",
            name: sym.to_string(),
        })
    }

    /// `ω(u)`: every node replaced by the image of its symbol.
    pub fn apply_term(&self, u: &Term) -> Result<LinComb> {
        match u {
            Term::Var(i) => Ok(LinComb::from_term(Term::Var(*i))),
            Term::App(op, args) => {
                let subs = args
                    .iter()
                    .map(|a| self.apply_term(a))
                    .collect::<Result<Vec<_>>>()?;
                let img = self.image(op)?;
                Ok(img.flat_map(|t| substitute(t, &subs)))
            }
        }
    }

    pub fn apply(&self, l: &LinComb) -> Result<LinComb> {
        l.try_flat_map(|t| self.apply_term(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::signature::OpDecl;

    #[test]
    fn commutator_applied_to_jacobi_term() {
        let lie = Signature::new("lie", vec![OpDecl::new("br", 2)]).unwrap();
        let asc = Signature::new("as", vec![OpDecl::new("m", 2)]).unwrap();
        let m = |a, b| Term::app("m", vec![a, b]);
        let img = LinComb::normalize([
            (m(Term::var(1), Term::var(2)), q(1)),
            (m(Term::var(2), Term::var(1)), q(-1)),
        ]);
        let w = Morphism::new("comm", lie, asc, [(OpSym::plain("br"), img)].into()).unwrap();
        let u = Term::app("br", vec![Term::app("br", vec![Term::var(1), Term::var(2)]), Term::var(3)]);
        assert_eq!(w.apply_term(&u).unwrap().len(), 4);
        let id = Morphism::identity(&w.source);
        assert_eq!(id.apply_term(&u).unwrap(), LinComb::from_term(u));
    }
}
