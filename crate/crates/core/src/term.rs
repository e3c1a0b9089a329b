//! Planar rooted trees of the free operad: leaves carry variable indices,
//! internal nodes carry (possibly decorated) operation symbols.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::subset::{Perm, Subset};

/// An operation symbol, optionally carrying a subset decoration `f^H`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpSym {
    pub name: Arc<str>,
    pub deco: Option<Subset>,
}

impl OpSym {
    pub fn plain(name: &str) -> Self {
        OpSym {
            name: Arc::from(name),
            deco: None,
        }
    }

    pub fn decorated(name: &str, deco: Subset) -> Self {
        OpSym {
            name: Arc::from(name),
            deco: Some(deco),
        }
    }

    pub fn with_deco(&self, deco: Option<Subset>) -> Self {
        OpSym {
            name: self.name.clone(),
            deco,
        }
    }

    pub fn erased(&self) -> Self {
        self.with_deco(None)
    }
}

impl fmt::Display for OpSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.deco {
            None => write!(f, "{}", self.name),
            Some(h) => write!(f, "{}^{}", self.name, h),
        }
    }
}

impl fmt::Debug for OpSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A planar tree with numbered leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u32),
    App(OpSym, Vec<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(OpSym::plain(name), args)
    }

    pub fn deco(name: &str, deco: Subset, args: Vec<Term>) -> Term {
        Term::App(OpSym::decorated(name, deco), args)
    }

    /// Number of leaves.
    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => args.iter().map(Term::degree).sum(),
        }
    }

    /// Leaf indices in left-to-right order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_leaves(out)),
        }
    }

    pub fn first_leaf(&self) -> u32 {
        match self {
            Term::Var(i) => *i,
            Term::App(_, args) => args[0].first_leaf(),
        }
    }

    /// Set of leaf indices. Only meaningful for indices up to 31.
    pub fn var_set(&self) -> Subset {
        match self {
            Term::Var(i) => Subset::singleton(*i),
            Term::App(_, args) => args
                .iter()
                .fold(Subset::EMPTY, |acc, a| acc.union(a.var_set())),
        }
    }

    /// Leaf multiset is exactly `{1..degree}`.
    pub fn is_multilinear(&self) -> bool {
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        leaves.iter().enumerate().all(|(k, &i)| i == k as u32 + 1)
    }

    pub fn check_multilinear(&self) -> Result<()> {
        if self.is_multilinear() {
            Ok(())
        } else {
            Err(Error::NotMultilinear(self.to_string()))
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Every operation symbol used, root first, depth-first.
    pub fn ops(&self) -> Vec<&OpSym> {
        let mut out = Vec::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops<'a>(&'a self, out: &mut Vec<&'a OpSym>) {
        if let Term::App(op, args) = self {
            out.push(op);
            args.iter().for_each(|a| a.collect_ops(out));
        }
    }

    /// Relabel every leaf through `f`.
    pub fn relabel(&self, f: &impl Fn(u32) -> u32) -> Term {
        match self {
            Term::Var(i) => Term::Var(f(*i)),
            Term::App(op, args) => Term::App(op.clone(), args.iter().map(|a| a.relabel(f)).collect()),
        }
    }

    /// Rewrite every operation symbol through `f`, keeping shape and leaves.
    pub fn map_ops(&self, f: &impl Fn(&OpSym) -> OpSym) -> Term {
        match self {
            Term::Var(i) => Term::Var(*i),
            Term::App(op, args) => Term::App(f(op), args.iter().map(|a| a.map_ops(f)).collect()),
        }
    }

    /// Drops all decorations.
    pub fn erase(&self) -> Term {
        self.map_ops(&OpSym::erased)
    }

    /// Symmetric-group action: leaf `i` becomes leaf `σ(i)`.
    pub fn act(&self, sigma: &Perm) -> Result<Term> {
        let n = self.degree();
        if sigma.len() != n || !self.is_multilinear() {
            return Err(Error::NotBijection(sigma.images().to_vec()));
        }
        Ok(self.relabel(&|i| sigma.apply(i)))
    }

    /// Operadic composition: leaf `i` of `self` is replaced by `inners[i-1]`
    /// with its leaves shifted by `m_1 + .. + m_{i-1}`.
    pub fn graft(&self, inners: &[Term]) -> Result<Term> {
        let n = self.degree();
        if inners.len() != n {
            return Err(Error::Structural(format!(
                "graft: outer term {self} has degree {n} but {} inner terms were given",
                inners.len()
            )));
        }
        if !self.is_multilinear() {
            return Err(Error::NotMultilinear(self.to_string()));
        }
        let mut shifts = Vec::with_capacity(n);
        let mut acc = 0u32;
        for (slot, t) in inners.iter().enumerate() {
            if !t.is_multilinear() {
                return Err(Error::Structural(format!(
                    "graft: inner term {t} in slot {} is not multilinear",
                    slot + 1
                )));
            }
            shifts.push(acc);
            acc += t.degree() as u32;
        }
        Ok(self.graft_unchecked(inners, &shifts))
    }

    fn graft_unchecked(&self, inners: &[Term], shifts: &[u32]) -> Term {
        match self {
            Term::Var(i) => {
                let k = *i as usize - 1;
                let s = shifts[k];
                inners[k].relabel(&|j| j + s)
            }
            Term::App(op, args) => Term::App(
                op.clone(),
                args.iter().map(|a| a.graft_unchecked(inners, shifts)).collect(),
            ),
        }
    }

    /// Partial composition `self ∘_i inner`.
    pub fn compose_at(&self, i: usize, inner: &Term) -> Result<Term> {
        let n = self.degree();
        if i == 0 || i > n {
            return Err(Error::Structural(format!("compose_at: slot {i} outside 1..={n}")));
        }
        let inners: Vec<Term> = (1..=n)
            .map(|k| if k == i { inner.clone() } else { Term::Var(1) })
            .collect();
        self.graft(&inners)
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_same_degree(other))
    }
}

impl Term {
    fn cmp_same_degree(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Var(a), Term::Var(b)) => a.cmp(b),
            (Term::Var(_), Term::App(..)) => Ordering::Less,
            (Term::App(..), Term::Var(_)) => Ordering::Greater,
            (Term::App(f, xs), Term::App(g, ys)) => f
                .cmp(g)
                .then_with(|| xs.len().cmp(&ys.len()))
                .then_with(|| {
                    for (x, y) in xs.iter().zip(ys) {
                        let c = x.cmp(y);
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                    Ordering::Equal
                }),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Term {
        Term::var(i)
    }
    fn f(a: Term, b: Term) -> Term {
        Term::app("f", vec![a, b])
    }
    fn star(a: Term, b: Term) -> Term {
        Term::app("*", vec![a, b])
    }
    fn br(a: Term, b: Term) -> Term {
        Term::app("br", vec![a, b])
    }

    #[test]
    fn graft_generator_and_identity_leaf() {
        let g = Term::app("g", vec![x(1), x(2)]);
        let out = f(x(1), x(2)).graft(&[g.clone(), x(1)]).unwrap();
        assert_eq!(out, f(g.clone(), x(3)));
        assert_eq!(x(1).graft(&[g.clone()]).unwrap(), g);
    }

    #[test]
    fn graft_with_shifts() {
        // T = [x2,x3]*x1, T1 = [x2,[x1,x3]], T2 = [x2,x1], T3 = x1*x2; shifts 0, 3, 5.
        let t = star(br(x(2), x(3)), x(1));
        let t1 = br(x(2), br(x(1), x(3)));
        let t2 = br(x(2), x(1));
        let t3 = star(x(1), x(2));
        let expected = star(br(br(x(5), x(4)), star(x(6), x(7))), br(x(2), br(x(1), x(3))));
        assert_eq!(t.graft(&[t1, t2, t3]).unwrap(), expected);
    }

    #[test]
    fn graft_reports_slot_mismatch() {
        let err = f(x(1), x(2)).graft(&[x(1)]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        let err = f(x(1), x(2)).graft(&[x(1), f(x(1), x(1))]).unwrap_err();
        assert!(err.to_string().contains("slot 2"));
    }

    #[test]
    fn act_examples() {
        let swap = Perm::from_cycles(2, &[&[1, 2]]).unwrap();
        assert_eq!(f(x(1), x(2)).act(&swap).unwrap(), f(x(2), x(1)));
        let t = f(Term::app("g", vec![x(1), x(3)]), x(2));
        assert_eq!(t.act(&Perm::identity(3)).unwrap(), t);
        let cyc = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(
            t.act(&cyc).unwrap(),
            f(Term::app("g", vec![x(2), x(1)]), x(3))
        );
        assert!(t.act(&Perm::identity(2)).is_err());
    }

    #[test]
    fn term_order_degree_first() {
        assert!(x(3) < f(x(1), x(2)));
        assert!(f(x(1), x(2)) < f(x(2), x(1)));
        assert!(f(x(1), f(x(2), x(3))) > f(x(1), x(2)));
        let d1 = Term::deco("f", Subset::singleton(1), vec![x(1), x(2)]);
        let d2 = Term::deco("f", Subset::singleton(2), vec![x(1), x(2)]);
        assert!(f(x(1), x(2)) < d1 && d1 < d2);
    }
}
