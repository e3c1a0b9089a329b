//! Enumeration of multilinear monomials over a finite signature.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::subset::Perm;
use crate::term::{OpSym, Term};

/// Hard degree cap by number of operation symbols (after decoration).
///
/// Monomial counts grow like `Catalan × ops^(n-1) × n!`; beyond these caps
/// generation and elimination stop being interactive.
pub fn degree_limit(symbol_count: usize) -> usize {
    match symbol_count {
        0 | 1 => 5,
        2 | 3 => 4,
        4..=6 => 3,
        _ => 2,
    }
}

pub fn check_degree(sig: &Signature, n: usize) -> Result<()> {
    if sig.has_unary() {
        return Err(Error::Unsupported(format!(
            "signature `{}` has unary operations, so its multilinear components are infinite-dimensional",
            sig.name
        )));
    }
    let limit = degree_limit(sig.symbols().len());
    if n > limit {
        return Err(Error::DegreeLimit {
            degree: n,
            limit,
            what: format!("signature `{}`", sig.name),
        });
    }
    Ok(())
}

/// Tree shapes with `n` leaves labeled `1..n` left to right.
/// Unary symbols are skipped (they would make the set infinite).
pub fn shapes(symbols: &[(OpSym, usize)], n: usize) -> Vec<Term> {
    let mut memo: HashMap<usize, Vec<Term>> = HashMap::new();
    shapes_memo(symbols, n, &mut memo)
}

fn shapes_memo(symbols: &[(OpSym, usize)], n: usize, memo: &mut HashMap<usize, Vec<Term>>) -> Vec<Term> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.push(Term::Var(1));
    }
    for (op, arity) in symbols {
        let k = *arity;
        if k < 2 || k > n {
            continue;
        }
        for parts in compositions(n, k) {
            let child_sets: Vec<Vec<Term>> =
                parts.iter().map(|&m| shapes_memo(symbols, m, memo)).collect();
            let mut combos: Vec<Vec<Term>> = vec![Vec::new()];
            let mut offset = 0u32;
            for (set, &m) in child_sets.iter().zip(&parts) {
                let mut next = Vec::with_capacity(combos.len() * set.len());
                for prefix in &combos {
                    for s in set {
                        let mut p = prefix.clone();
                        p.push(s.relabel(&|i| i + offset));
                        next.push(p);
                    }
                }
                combos = next;
                offset += m as u32;
            }
            out.extend(combos.into_iter().map(|c| Term::App(op.clone(), c)));
        }
    }
    memo.insert(n, out.clone());
    out
}

/// Ordered compositions of `n` into `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if k == 1 {
        return if n >= 1 { vec![vec![n]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(k - 1) {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All multilinear monomials of degree `n`, sorted in term order.
pub fn monomials(sig: &Signature, n: usize) -> Vec<Term> {
    let symbols = sig.symbols();
    let perms = Perm::all(n);
    let mut out: Vec<Term> = shapes(&symbols, n)
        .iter()
        .flat_map(|s| perms.iter().map(move |p| s.relabel(&|i| p.apply(i))))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Number of multilinear monomials of degree `n` without materializing them.
pub fn monomial_count(sig: &Signature, n: usize) -> usize {
    let fact: usize = (1..=n).product();
    shapes(&sig.symbols(), n).len() * fact
}
