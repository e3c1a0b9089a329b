//! Formal rational linear combinations of terms, identities and identity systems.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::signature::Signature;
use crate::subset::Perm;
use crate::term::{OpSym, Term};

/// A finite sum of terms with nonzero rational coefficients, kept in term order.
///
/// Because entries live in an ordered map and zeros are never stored, two
/// `LinComb`s are equal exactly when they denote the same element.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LinComb {
    entries: BTreeMap<Term, Q>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn from_term(t: Term) -> Self {
        Self::monomial(t, Q::one())
    }

    pub fn monomial(t: Term, c: Q) -> Self {
        let mut l = LinComb::zero();
        l.add_term(t, c);
        l
    }

    /// Canonical form of an arbitrary list of `(term, coefficient)` pairs:
    /// equal terms merged, zero coefficients dropped.
    pub fn normalize<I: IntoIterator<Item = (Term, Q)>>(pairs: I) -> Self {
        let mut l = LinComb::zero();
        for (t, c) in pairs {
            l.add_term(t, c);
        }
        l
    }

    pub fn add_term(&mut self, t: Term, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(t) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (t, v) in &other.entries {
            self.add_term(t.clone(), v * c);
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    pub fn scale(&self, c: &Q) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LinComb {
        self.scale(&-Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Q)> {
        self.entries.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.entries.keys()
    }

    pub fn coeff(&self, t: &Term) -> Q {
        self.entries.get(t).cloned().unwrap_or_else(Q::zero)
    }

    /// Common leaf count, or `None` for the zero combination.
    pub fn degree(&self) -> Option<usize> {
        self.entries.keys().next().map(Term::degree)
    }

    /// Every term is multilinear of degree `n`.
    pub fn check_multilinear(&self, n: usize) -> Result<()> {
        for t in self.terms() {
            if t.degree() != n || !t.is_multilinear() {
                return Err(Error::NotMultilinear(format!(
                    "term {t} is not multilinear of degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Linear extension of a map on terms.
    pub fn flat_map(&self, f: impl Fn(&Term) -> LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (t, c) in &self.entries {
            out.add_scaled(&f(t), c);
        }
        out
    }

    pub fn try_flat_map(&self, f: impl Fn(&Term) -> Result<LinComb>) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (t, c) in &self.entries {
            out.add_scaled(&f(t)?, c);
        }
        Ok(out)
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Term) -> LinComb {
        LinComb::normalize(self.entries.iter().map(|(t, c)| (f(t), c.clone())))
    }

    pub fn erase(&self) -> LinComb {
        self.map_terms(Term::erase)
    }

    pub fn act(&self, sigma: &Perm) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (t, c) in &self.entries {
            out.add_term(t.act(sigma)?, c.clone());
        }
        Ok(out)
    }

    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> LinComb {
        self.map_terms(|t| t.relabel(f))
    }

    /// Rescales so that the coefficient of the smallest term is 1.
    pub fn monic(&self) -> LinComb {
        match self.entries.values().next() {
            None => LinComb::zero(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// `op(args..)` expanded multilinearly.
    pub fn apply_op(op: &OpSym, args: &[LinComb]) -> LinComb {
        let mut acc: Vec<(Vec<Term>, Q)> = vec![(Vec::new(), Q::one())];
        for arg in args {
            let mut next = Vec::with_capacity(acc.len() * arg.len());
            for (prefix, c) in &acc {
                for (t, d) in arg.iter() {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    next.push((p, c * d));
                }
            }
            acc = next;
        }
        LinComb::normalize(
            acc.into_iter()
                .map(|(children, c)| (Term::App(op.clone(), children), c)),
        )
    }
}

/// Substitutes a linear combination for every leaf (`images[i - 1]` for `x_i`) and expands.
pub fn substitute(t: &Term, images: &[LinComb]) -> LinComb {
    match t {
        Term::Var(i) => images[*i as usize - 1].clone(),
        Term::App(op, args) => {
            let subs: Vec<LinComb> = args.iter().map(|a| substitute(a, images)).collect();
            LinComb::apply_op(op, &subs)
        }
    }
}

impl From<Term> for LinComb {
    fn from(t: Term) -> Self {
        LinComb::from_term(t)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_lincomb(self, f, &|t, f| write!(f, "{t}"))
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `2*t1 - 1/2*t2 + t3`, using `term` to print each term.
pub(crate) fn fmt_lincomb(
    l: &LinComb,
    f: &mut fmt::Formatter<'_>,
    term: &dyn Fn(&Term, &mut fmt::Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if l.is_zero() {
        return write!(f, "0");
    }
    for (k, (t, c)) in l.iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let a = c.abs();
        if !a.is_one() {
            write!(f, "{}*", fmt_q(&a))?;
        }
        term(t, f)?;
    }
    Ok(())
}

/// A multilinear linear combination asserted to vanish.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Identity {
    pub name: String,
    pub degree: usize,
    pub lhs: LinComb,
}

impl Identity {
    pub fn new(name: &str, degree: usize, lhs: LinComb) -> Result<Self> {
        lhs.check_multilinear(degree)?;
        Ok(Identity {
            name: name.to_string(),
            degree,
            lhs,
        })
    }

    /// Degree read off the first term; fails on the zero combination.
    pub fn from_lincomb(name: &str, lhs: LinComb) -> Result<Self> {
        let degree = lhs.degree().ok_or_else(|| {
            Error::Structural(format!("identity `{name}` is zero and has no degree"))
        })?;
        Identity::new(name, degree, lhs)
    }
}

/// A signature plus finitely many multilinear identities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentitySystem {
    pub name: String,
    pub signature: Signature,
    pub identities: Vec<Identity>,
}

impl IdentitySystem {
    pub fn new(name: &str, signature: Signature, identities: Vec<Identity>) -> Result<Self> {
        for id in &identities {
            for t in id.lhs.terms() {
                signature.check_term(t)?;
            }
        }
        Ok(IdentitySystem {
            name: name.to_string(),
            signature,
            identities,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.identities.iter().map(|i| i.degree).max().unwrap_or(0)
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.name == name)
    }

    pub fn of_degree(&self, n: usize) -> impl Iterator<Item = &Identity> {
        self.identities.iter().filter(move |i| i.degree == n)
    }

    /// Drops zero identities and exact duplicates, keeping first occurrences.
    pub fn dedup(mut self) -> Self {
        let mut seen: Vec<LinComb> = Vec::new();
        self.identities.retain(|id| {
            if id.lhs.is_zero() || seen.contains(&id.lhs) {
                false
            } else {
                seen.push(id.lhs.clone());
                true
            }
        });
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn x(i: u32) -> Term {
        Term::var(i)
    }
    fn f(a: Term, b: Term) -> Term {
        Term::app("f", vec![a, b])
    }

    #[test]
    fn normalize_examples() {
        let t = f(x(1), x(2));
        assert!(LinComb::normalize([(t.clone(), q(1)), (t.clone(), q(-1))]).is_zero());
        let l = LinComb::normalize([(t.clone(), q(2)), (t.clone(), q(3))]);
        assert_eq!(l.len(), 1);
        assert_eq!(l.coeff(&t), q(5));
        let l = LinComb::normalize([(f(x(2), x(1)), q(1)), (t, q(1))]);
        assert_eq!(l.len(), 2);
    }

    #[test]
    fn display_signs() {
        let l = LinComb::normalize([(f(x(1), x(2)), q(-1)), (f(x(2), x(1)), frac(3, 2))]);
        assert_eq!(l.to_string(), "-f(x1,x2) + 3/2*f(x2,x1)");
        assert_eq!(LinComb::zero().to_string(), "0");
    }

    #[test]
    fn apply_op_expands() {
        let a = LinComb::normalize([(x(1), q(1)), (x(2), q(2))]);
        let b = LinComb::from_term(x(3));
        let l = LinComb::apply_op(&OpSym::plain("f"), &[a, b]);
        assert_eq!(l.len(), 2);
        assert_eq!(l.coeff(&f(x(2), x(3))), q(2));
    }
}
