//! Sparse fraction-free row reduction over the integers.
//!
//! Rows are kept primitive (content 1, positive leading entry). Eliminating
//! column `c` from `r` with pivot row `p` computes `(p_c/g)·r − (r_c/g)·p`
//! with `g = gcd(p_c, r_c)`, so entries stay integral without fractions.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Sparse integer row, strictly increasing columns, no zero entries.
pub type Row = Vec<(u32, BigInt)>;

/// Optional provenance: a rational combination of generator indices.
pub type Prov = Vec<(usize, Q)>;

/// `a·x − b·y` on sparse rows.
pub fn lin_sub(a: &BigInt, x: &Row, b: &BigInt, y: &Row) -> Row {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn prov_sub(a: &Q, x: &Prov, b: &Q, y: &Prov) -> Prov {
    let mut m: BTreeMap<usize, Q> = BTreeMap::new();
    for (k, v) in x {
        *m.entry(*k).or_insert_with(Q::zero) += a * v;
    }
    for (k, v) in y {
        *m.entry(*k).or_insert_with(Q::zero) -= b * v;
    }
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Divides by the content and makes the leading entry positive; returns the divisor used.
pub fn make_primitive(row: &mut Row) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return BigInt::one();
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    g
}

/// An echelon basis: every stored row's leading column is its pivot and no
/// two rows share a pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    provs: Vec<Option<Prov>>,
    pivot_row: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Fully reduces `row` against the basis (every pivot column cleared).
    pub fn reduce(&self, row: Row) -> Row {
        self.reduce_tracked(row, None).0
    }

    fn reduce_tracked(&self, mut row: Row, mut prov: Option<Prov>) -> (Row, Option<Prov>) {
        let mut i = 0;
        while i < row.len() {
            let c = row[i].0;
            if let Some(&pr) = self.pivot_row.get(&c) {
                let p = &self.rows[pr];
                let g = p[0].1.gcd(&row[i].1);
                let a = &p[0].1 / &g;
                let b = &row[i].1 / &g;
                row = lin_sub(&a, &row, &b, p);
                if let (Some(pv), Some(Some(pp))) = (prov.as_ref(), self.provs.get(pr)) {
                    prov = Some(prov_sub(&Q::from_integer(a.clone()), pv, &Q::from_integer(b.clone()), pp));
                }
                if row.len() > 64 && i % 16 == 0 {
                    let d = make_primitive_keep_sign(&mut row);
                    if let Some(pv) = prov.as_mut() {
                        scale_prov(pv, &d);
                    }
                }
            } else {
                i += 1;
            }
        }
        if !row.is_empty() {
            let d = make_primitive(&mut row);
            if let Some(pv) = prov.as_mut() {
                scale_prov(pv, &d);
            }
        }
        (row, prov)
    }

    /// Inserts a row; returns `true` if the rank grew.
    pub fn insert(&mut self, row: Row) -> bool {
        self.insert_tracked(row, None)
    }

    /// Inserts a row that carries its own provenance.
    pub fn insert_tracked(&mut self, row: Row, prov: Option<Prov>) -> bool {
        let (r, p) = self.reduce_tracked(row, prov);
        if r.is_empty() {
            return false;
        }
        self.pivot_row.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        self.provs.push(p);
        true
    }

    /// Reduces a target while tracking provenance. If the target lies in the
    /// span, returns coefficients `c_j` with `target = Σ c_j · generator_j`
    /// (generators as inserted with `insert_tracked`).
    pub fn express(&self, row: Row) -> Option<Prov> {
        const TARGET: usize = usize::MAX;
        let (r, p) = self.reduce_tracked(row, Some(vec![(TARGET, Q::one())]));
        if !r.is_empty() {
            return None;
        }
        let p = p.unwrap_or_default();
        let s = p.iter().find(|(k, _)| *k == TARGET)?.1.clone();
        Some(
            p.into_iter()
                .filter(|(k, _)| *k != TARGET)
                .map(|(k, v)| (k, -v / &s))
                .collect(),
        )
    }

    /// The unique reduced row echelon form (each pivot column is zero in the other rows),
    /// rows sorted by pivot.
    pub fn rref(&self) -> Vec<Row> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.rows[k][0].0);
        let mut rows: Vec<Row> = order.iter().map(|&k| self.rows[k].clone()).collect();
        let pivots: Vec<u32> = rows.iter().map(|r| r[0].0).collect();
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let pk = rows[k].clone();
            for row in rows.iter_mut().take(k) {
                if let Ok(pos) = row.binary_search_by_key(&c, |e| e.0) {
                    let g = pk[0].1.gcd(&row[pos].1);
                    let a = &pk[0].1 / &g;
                    let b = &row[pos].1 / &g;
                    *row = lin_sub(&a, row, &b, &pk);
                    make_primitive(row);
                }
            }
        }
        rows
    }
}

fn make_primitive_keep_sign(row: &mut Row) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return g;
        }
    }
    if g.is_zero() || g.is_one() {
        return BigInt::one();
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
    g
}

fn scale_prov(p: &mut Prov, d: &BigInt) {
    if d.is_one() {
        return;
    }
    let d = Q::from_integer(d.clone());
    for (_, v) in p.iter_mut() {
        *v = &*v / &d;
    }
}

/// Clears denominators: returns the integer row proportional to `entries`.
pub fn integer_row(entries: &[(u32, Q)]) -> Row {
    let mut den = BigInt::one();
    for (_, v) in entries {
        den = den.lcm(v.denom());
    }
    let mut row: Row = entries
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, (v * Q::from_integer(den.clone())).to_integer()))
        .collect();
    row.sort_by_key(|e| e.0);
    row
}

/// Rank of a dense rational matrix (rows as vectors), by the same elimination.
pub fn rank_dense(rows: &[Vec<Q>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        let entries: Vec<(u32, Q)> = r
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k as u32, v.clone()))
            .collect();
        e.insert(integer_row(&entries));
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn row(v: &[(u32, i64)]) -> Row {
        v.iter().map(|(c, x)| (*c, BigInt::from(*x))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 2), (1, 4)])));
        assert!(e.insert(row(&[(1, 3), (2, 1)])));
        assert!(!e.insert(row(&[(0, 1), (1, 5), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(row(&[(0, 1), (1, 2)])).is_empty());
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(row(&[(1, 1), (2, 2)]));
        let r = e.rref();
        assert_eq!(r[0], row(&[(0, 1), (2, -1)]));
        assert_eq!(r[1], row(&[(1, 1), (2, 2)]));
    }

    #[test]
    fn provenance_reconstructs_target() {
        let gens = [row(&[(0, 1), (1, 1)]), row(&[(1, 1), (2, 1)])];
        let mut e = Echelon::new();
        for (k, g) in gens.iter().enumerate() {
            e.insert_tracked(g.clone(), Some(vec![(k, q(1))]));
        }
        let c = e.express(row(&[(0, 1), (1, -1), (2, -2)])).unwrap();
        assert_eq!(c, vec![(0, q(1)), (1, q(-2))]);
        assert!(e.express(row(&[(2, 1)])).is_none());
    }

    #[test]
    fn integer_row_clears_denominators() {
        let r = integer_row(&[(3, frac(1, 2)), (1, frac(2, 3))]);
        assert_eq!(r, row(&[(1, 4), (3, 3)]));
    }
}
