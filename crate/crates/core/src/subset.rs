//! Finite subsets of `{1..n}` and permutations of `{1..n}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest arity/degree a [`Subset`] can describe.
pub const MAX_ELEMENT: u32 = 31;

/// A subset of `{1, .., 31}` stored as a bitmask; bit `i - 1` holds element `i`.
///
/// Ordering is lexicographic on the sorted element lists, so `{1} < {1,2} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(i: u32) -> Self {
        debug_assert!((1..=MAX_ELEMENT).contains(&i));
        Subset(1 << (i - 1))
    }

    /// `{1, .., n}`.
    pub fn full(n: u32) -> Self {
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self> {
        let mut bits = 0u32;
        for e in elems {
            if e == 0 || e > MAX_ELEMENT {
                return Err(Error::Structural(format!(
                    "subset element {e} outside 1..={MAX_ELEMENT}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    pub fn contains(self, i: u32) -> bool {
        i >= 1 && i <= MAX_ELEMENT && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: u32) {
        self.0 |= 1 << (i - 1);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_singleton(self) -> bool {
        self.len() == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, or 0 for the empty set.
    pub fn max(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    /// Smallest element, or 0 for the empty set.
    pub fn min(self) -> u32 {
        if self.0 == 0 {
            0
        } else {
            self.0.trailing_zeros() + 1
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        (1..=MAX_ELEMENT).filter(move |&i| self.contains(i))
    }

    pub fn elements(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Shift every element up by `k`.
    pub fn shifted(self, k: u32) -> Subset {
        Subset(self.0 << k)
    }

    /// All nonempty subsets of `{1..n}` (the family `P(n)`), in ascending [`Ord`] order.
    pub fn nonempty_subsets(n: u32) -> Vec<Subset> {
        let mut out: Vec<Subset> = (1..(1u64 << n)).map(|b| Subset(b as u32)).collect();
        out.sort();
        out
    }

    /// All nonempty subsets of `self`, ascending.
    pub fn nonempty_subsets_of(self) -> Vec<Subset> {
        let elems = self.elements();
        let mut out = Vec::with_capacity((1usize << elems.len()).saturating_sub(1));
        for mask in 1u64..(1u64 << elems.len()) {
            let mut s = Subset::EMPTY;
            for (k, &e) in elems.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    s.insert(e);
                }
            }
            out.push(s);
        }
        out.sort();
        out
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A permutation of `{1..n}` given by its images: `images[i - 1] = σ(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u32).collect())
    }

    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im == 0 || im as usize > n || seen[im as usize - 1] {
                return Err(Error::NotBijection(images.clone()));
            }
            seen[im as usize - 1] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles, e.g. `[[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=n as u32).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a as usize > n || b as usize > n {
                    return Err(Error::NotBijection(cyc.to_vec()));
                }
                images[a as usize - 1] = b;
            }
        }
        Perm::new(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (k, &im) in self.0.iter().enumerate() {
            inv[im as usize - 1] = k as u32 + 1;
        }
        Perm(inv)
    }

    pub fn image_of(&self, s: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for e in s.iter() {
            out.insert(self.apply(e));
        }
        out
    }

    /// All permutations of `{1..n}` in lexicographic order of their image vectors.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonempty_subsets_count_and_order() {
        let p3 = Subset::nonempty_subsets(3);
        assert_eq!(p3.len(), 7);
        let shown: Vec<String> = p3.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            shown,
            ["{1}", "{1,2}", "{1,2,3}", "{1,3}", "{2}", "{2,3}", "{3}"]
        );
    }

    #[test]
    fn perm_compose_and_inverse() {
        let s = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(s.images(), &[2, 3, 1]);
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
        assert_eq!(Perm::all(4).len(), 24);
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![1, 3]).is_err());
    }

    #[test]
    fn subset_of_elements() {
        let s = Subset::from_elements([3, 1]).unwrap();
        assert_eq!(s.elements(), vec![1, 3]);
        assert_eq!(s.shifted(2).elements(), vec![3, 5]);
        assert_eq!(s.max(), 3);
        assert_eq!(s.min(), 1);
        assert!(Subset::from_elements([0]).is_err());
        assert_eq!(Subset::full(3).nonempty_subsets_of().len(), 7);
    }
}
