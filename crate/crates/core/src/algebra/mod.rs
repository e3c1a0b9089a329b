//! Finite-dimensional algebras given by structure constants.

pub mod builtin;
pub mod construct;
pub mod operator;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lincomb::{IdentitySystem, LinComb};
use crate::rational::{fmt_q, Q};
use crate::signature::Signature;
use crate::term::{OpSym, Term};

/// A vector in coordinates of the algebra's basis.
pub type Vector = Vec<Q>;

pub fn zero_vec(dim: usize) -> Vector {
    vec![Q::zero(); dim]
}

pub fn unit_vec(dim: usize, i: usize) -> Vector {
    let mut v = zero_vec(dim);
    v[i] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Q], v: &[Q], c: &Q) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b * c;
        }
    }
}

/// Structure tensor of one operation: `data[flat(i_1..i_k)]` is the product of basis elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Table {
    pub arity: usize,
    pub data: Vec<Vector>,
}

/// Row-major flattening of a basis tuple.
pub fn flat_index(dim: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

/// Every basis tuple of length `k`, in lexicographic order.
pub fn basis_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let total = dim.pow(k as u32);
    (0..total)
        .map(|mut f| {
            let mut idx = vec![0; k];
            for slot in (0..k).rev() {
                idx[slot] = f % dim;
                f /= dim;
            }
            idx
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAlgebra {
    pub name: String,
    pub signature: Signature,
    pub basis: Vec<String>,
    pub tables: BTreeMap<OpSym, Table>,
}

impl FiniteAlgebra {
    /// All products zero.
    pub fn zero(name: &str, signature: Signature, basis: Vec<String>) -> Self {
        let dim = basis.len();
        let tables = signature
            .symbols()
            .into_iter()
            .map(|(sym, arity)| {
                let data = vec![zero_vec(dim); dim.pow(arity as u32)];
                (sym, Table { arity, data })
            })
            .collect();
        FiniteAlgebra {
            name: name.to_string(),
            signature,
            basis,
            tables,
        }
    }

    /// Basis named `prefix1 .. prefixN`.
    pub fn numbered_basis(prefix: &str, dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn table(&self, sym: &OpSym) -> Result<&Table> {
        self.tables.get(sym).ok_or_else(|| Error::SignatureMismatch(format!(
            "algebra `{}` has no operation `{sym}`",
            self.name
        )))
    }

    pub fn set(&mut self, sym: &OpSym, idx: &[usize], v: Vector) -> Result<()> {
        let dim = self.dim();
        if v.len() != dim || idx.iter().any(|&i| i >= dim) {
            return Err(Error::Dimension(format!("bad entry for `{sym}` in `{}`", self.name)));
        }
        let name = self.name.clone();
        let t = self.tables.get_mut(sym).ok_or_else(|| Error::SignatureMismatch(format!(
            "algebra `{name}` has no operation `{sym}`"
        )))?;
        if t.arity != idx.len() {
            return Err(Error::Structural(format!("`{sym}` has arity {}, got {} arguments", t.arity, idx.len())));
        }
        t.data[flat_index(dim, idx)] = v;
        Ok(())
    }

    pub fn product_basis(&self, sym: &OpSym, idx: &[usize]) -> Result<&Vector> {
        let t = self.table(sym)?;
        if t.arity != idx.len() {
            return Err(Error::Structural(format!("`{sym}` has arity {}, got {} arguments", t.arity, idx.len())));
        }
        Ok(&t.data[flat_index(self.dim(), idx)])
    }

    /// Multilinear extension of a structure tensor.
    pub fn product(&self, sym: &OpSym, args: &[&[Q]]) -> Result<Vector> {
        let t = self.table(sym)?;
        if t.arity != args.len() {
            return Err(Error::Structural(format!("`{sym}` has arity {}, got {} arguments", t.arity, args.len())));
        }
        let dim = self.dim();
        let supports: Vec<Vec<(usize, &Q)>> = args
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let mut out = zero_vec(dim);
        let mut stack: Vec<(usize, usize, Q)> = vec![(0, 0, Q::one())];
        while let Some((slot, flat, coef)) = stack.pop() {
            if slot == args.len() {
                add_scaled(&mut out, &t.data[flat], &coef);
                continue;
            }
            for (i, c) in &supports[slot] {
                stack.push((slot + 1, flat * dim + i, &coef * *c));
            }
        }
        Ok(out)
    }

    /// Value of a term with `args[i-1]` substituted for `x_i`.
    pub fn evaluate_term(&self, t: &Term, args: &[Vector]) -> Result<Vector> {
        match t {
            Term::Var(i) => args
                .get(*i as usize - 1)
                .cloned()
                .ok_or_else(|| Error::Structural(format!("no argument for x{i}"))),
            Term::App(op, children) => {
                let vals = children
                    .iter()
                    .map(|c| self.evaluate_term(c, args))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&[Q]> = vals.iter().map(|v| v.as_slice()).collect();
                self.product(op, &refs)
            }
        }
    }

    pub fn evaluate(&self, l: &LinComb, args: &[Vector]) -> Result<Vector> {
        if let Some(n) = l.degree() {
            if n != args.len() {
                return Err(Error::Structural(format!(
                    "degree {n} combination evaluated on {} arguments",
                    args.len()
                )));
            }
        }
        let mut out = zero_vec(self.dim());
        for (t, c) in l.iter() {
            add_scaled(&mut out, &self.evaluate_term(t, args)?, c);
        }
        Ok(out)
    }

    /// Evaluation on basis elements only, memoizing nothing; used by identity checks.
    pub fn evaluate_on_basis(&self, l: &LinComb, idx: &[usize]) -> Result<Vector> {
        let args: Vec<Vector> = idx.iter().map(|&i| unit_vec(self.dim(), i)).collect();
        self.evaluate(l, &args)
    }

    pub fn format_vector(&self, v: &[Q]) -> String {
        let l: Vec<String> = v
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| if c.is_one() { b.clone() } else { format!("{}*{b}", fmt_q(c)) })
            .collect();
        if l.is_empty() {
            "0".into()
        } else {
            l.join(" + ")
        }
    }

    /// By multilinearity, an identity holds iff it vanishes on all basis tuples.
    pub fn check_identities(&self, s: &IdentitySystem) -> Result<IdentityReport> {
        if !self.signature.same_ops(&s.signature) {
            return Err(Error::SignatureMismatch(format!(
                "algebra `{}` is over `{}`, system `{}` over `{}`",
                self.name, self.signature.name, s.name, s.signature.name
            )));
        }
        let dim = self.dim();
        let mut checked = 0usize;
        for id in &s.identities {
            if id.lhs.is_zero() {
                continue;
            }
            let tuples = basis_tuples(dim, id.degree);
            checked += tuples.len();
            let witness = tuples
                .par_iter()
                .map(|idx| self.evaluate_on_basis(&id.lhs, idx).map(|v| (idx, v)))
                .find_first(|r| r.as_ref().map_or(true, |(_, v)| !is_zero_vec(v)));
            if let Some(r) = witness {
                let (idx, v) = r?;
                return Ok(IdentityReport {
                    passed: false,
                    checked,
                    witness: Some(Witness {
                        identity: id.name.clone(),
                        tuple: idx.iter().map(|&i| self.basis[i].clone()).collect(),
                        value: self.format_vector(&v),
                    }),
                });
            }
        }
        Ok(IdentityReport { passed: true, checked, witness: None })
    }

    /// Checks the declared flags of unary operations against every operation
    /// of arity ≥ 2: derivations satisfy the Leibniz rule, endomorphisms
    /// commute with the operation.
    pub fn check_unary_flags(&self) -> Result<()> {
        let dim = self.dim();
        let syms = self.signature.symbols();
        for (d, _) in syms.iter().filter(|(_, n)| *n == 1) {
            let flags = match self.signature.op(&d.name) {
                Some(o) => o.flags,
                None => continue,
            };
            if !flags.derivation && !flags.endomorphism {
                continue;
            }
            let apply = |v: &[Q]| self.product(d, &[v]);
            for (f, n) in syms.iter().filter(|(_, n)| *n >= 2) {
                for idx in basis_tuples(dim, *n) {
                    let args: Vec<Vector> = idx.iter().map(|&k| unit_vec(dim, k)).collect();
                    let refs: Vec<&[Q]> = args.iter().map(|v| v.as_slice()).collect();
                    let lhs = apply(&self.product(f, &refs)?)?;
                    let images: Vec<Vector> = args.iter().map(|a| apply(a)).collect::<Result<_>>()?;
                    let mut checks = Vec::new();
                    if flags.derivation {
                        let mut rhs = zero_vec(dim);
                        for i in 0..*n {
                            let mut r = refs.clone();
                            r[i] = &images[i];
                            add_scaled(&mut rhs, &self.product(f, &r)?, &Q::one());
                        }
                        checks.push(("derivation", rhs));
                    }
                    if flags.endomorphism {
                        let r: Vec<&[Q]> = images.iter().map(|v| v.as_slice()).collect();
                        checks.push(("endomorphism", self.product(f, &r)?));
                    }
                    for (what, rhs) in checks {
                        if rhs != lhs {
                            let names: Vec<&str> = idx.iter().map(|&k| self.basis[k].as_str()).collect();
                            return Err(Error::Structural(format!(
                                "`{d}` in `{}` is not a {what} for `{f}` at ({})",
                                self.name,
                                names.join(", ")
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Same algebra with relabeled basis: `perm[i]` is the new index of old basis element `i`.
    pub fn permute_basis(&self, perm: &[usize], names: Vec<String>) -> Result<FiniteAlgebra> {
        let dim = self.dim();
        if perm.len() != dim || names.len() != dim {
            return Err(Error::Dimension("basis permutation of wrong size".into()));
        }
        let mut out = FiniteAlgebra::zero(&self.name, self.signature.clone(), names);
        for (sym, t) in &self.tables {
            for idx in basis_tuples(dim, t.arity) {
                let v = &t.data[flat_index(dim, &idx)];
                let mut w = zero_vec(dim);
                for (i, c) in v.iter().enumerate() {
                    w[perm[i]] = c.clone();
                }
                let new_idx: Vec<usize> = idx.iter().map(|&i| perm[i]).collect();
                out.set(sym, &new_idx, w)?;
            }
        }
        Ok(out)
    }

    /// Same multiplication expressed in the basis `e'_j = Σ_i p[i][j] e_i`;
    /// `p_inv` must be the inverse of `p`.
    pub fn change_basis(&self, p: &[Vec<Q>], p_inv: &[Vec<Q>]) -> Result<FiniteAlgebra> {
        let dim = self.dim();
        let col = |m: &[Vec<Q>], j: usize| -> Vector { (0..dim).map(|i| m[i][j].clone()).collect() };
        let mut out = FiniteAlgebra::zero(&self.name, self.signature.clone(), self.basis.clone());
        for (sym, t) in &self.tables {
            for idx in basis_tuples(dim, t.arity) {
                let args: Vec<Vector> = idx.iter().map(|&j| col(p, j)).collect();
                let refs: Vec<&[Q]> = args.iter().map(|v| v.as_slice()).collect();
                let v = self.product(sym, &refs)?;
                let w: Vector = (0..dim)
                    .map(|i| (0..dim).fold(Q::zero(), |acc, k| acc + &p_inv[i][k] * &v[k]))
                    .collect();
                out.set(sym, &idx, w)?;
            }
        }
        Ok(out)
    }

    /// Structure constants in a fixed order: `(op, tuple, coordinates)` for nonzero products.
    pub fn nonzero_entries(&self) -> Vec<(OpSym, Vec<usize>, &Vector)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for (sym, t) in &self.tables {
            for idx in basis_tuples(dim, t.arity) {
                let v = &t.data[flat_index(dim, &idx)];
                if !is_zero_vec(v) {
                    out.push((sym.clone(), idx, v));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub identity: String,
    pub tuple: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub passed: bool,
    /// Number of (identity, basis tuple) evaluations performed.
    pub checked: usize,
    pub witness: Option<Witness>,
}

/// A linear map acting on column vectors: column `j` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearOperator {
    pub name: String,
    pub matrix: Vec<Vec<Q>>,
}

impl LinearOperator {
    pub fn new(name: &str, matrix: Vec<Vec<Q>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("operator `{name}` is not square")));
        }
        Ok(LinearOperator { name: name.to_string(), matrix })
    }

    pub fn identity(name: &str, dim: usize) -> Self {
        let m = (0..dim).map(|i| unit_vec(dim, i)).collect();
        LinearOperator { name: name.to_string(), matrix: m }
    }

    pub fn scaled_identity(name: &str, dim: usize, c: &Q) -> Self {
        let mut op = Self::identity(name, dim);
        for (i, row) in op.matrix.iter_mut().enumerate() {
            row[i] = c.clone();
        }
        op
    }

    /// Operator given by the images of the basis vectors.
    pub fn from_images(name: &str, images: &[Vector]) -> Result<Self> {
        let n = images.len();
        let m = (0..n).map(|i| images.iter().map(|img| img[i].clone()).collect()).collect();
        LinearOperator::new(name, m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn image(&self, j: usize) -> Vector {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        let n = self.dim();
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |acc, k| acc + &self.matrix[i][k] * &other.matrix[k][j]))
                    .collect()
            })
            .collect();
        LinearOperator { name: format!("{}*{}", self.name, other.name), matrix: m }
    }
}
