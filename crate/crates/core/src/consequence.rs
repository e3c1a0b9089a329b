//! Degree-bounded multilinear consequence spaces of identity systems.
//!
//! The degree-`n` component of the ideal generated by `S` is spanned by
//! `σ · C[Φ(u_1, .., u_k)]` where `C` is a monomial context with one hole,
//! `Φ ∈ S` has degree `k`, the `u_i` are monomials, and `σ` relabels leaves.
//! Contexts and inner monomials are taken in their left-to-right labeling;
//! the final relabeling covers every other labeling.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::linalg::{integer_row, Echelon, Row};
use crate::lincomb::{Identity, IdentitySystem, LinComb};
use crate::rational::{fmt_q, Q};
use crate::signature::Signature;
use crate::subset::Perm;
use crate::term::Term;

/// One generated spanning element: `σ · C[Φ(u_1..u_k)]` with the hole of
/// `C` at leaf `hole`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Instance {
    pub identity: String,
    pub context: Term,
    pub hole: u32,
    pub inners: Vec<Term>,
    pub perm: Perm,
}

impl Instance {
    /// Re-expands the instance from the identity it names.
    pub fn expand(&self, s: &IdentitySystem) -> Result<LinComb> {
        let id = s.get(&self.identity).ok_or_else(|| Error::UnknownReference {
            kind: "identity",
            name: self.identity.clone(),
        })?;
        let filled = graft_lincomb(&id.lhs, &self.inners)?;
        let d = self.context.degree();
        let mut out = LinComb::zero();
        for (t, c) in filled.iter() {
            let slots: Vec<Term> = (1..=d as u32)
                .map(|p| if p == self.hole { t.clone() } else { Term::Var(1) })
                .collect();
            out.add_term(self.context.graft(&slots)?, c.clone());
        }
        out.act(&self.perm)
    }

    pub fn describe(&self) -> String {
        let inners: Vec<String> = self.inners.iter().map(|t| t.to_string()).collect();
        format!(
            "{:?} . {}[hole {} := {}({})]",
            self.perm.images(),
            self.context,
            self.hole,
            self.identity,
            inners.join(", ")
        )
    }
}

fn graft_lincomb(l: &LinComb, inners: &[Term]) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (t, c) in l.iter() {
        out.add_term(t.graft(inners)?, c.clone());
    }
    Ok(out)
}

/// Degree-`n` multilinear monomials indexed in term order.
#[derive(Clone, Debug)]
pub struct Columns {
    pub terms: Vec<Term>,
    index: HashMap<Term, u32>,
}

impl Columns {
    pub fn new(sig: &Signature, n: usize) -> Self {
        let terms = enumerate::monomials(sig, n);
        let index = terms.iter().enumerate().map(|(k, t)| (t.clone(), k as u32)).collect();
        Columns { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn row(&self, l: &LinComb) -> Result<Row> {
        let mut entries = Vec::with_capacity(l.len());
        for (t, c) in l.iter() {
            let col = self.index.get(t).ok_or_else(|| {
                Error::SignatureMismatch(format!("{t} is not a degree-{} monomial of the signature", self.degree()))
            })?;
            entries.push((*col, c.clone()));
        }
        Ok(integer_row(&entries))
    }

    pub fn degree(&self) -> usize {
        self.terms.first().map(Term::degree).unwrap_or(0)
    }

    pub fn lincomb(&self, row: &Row) -> LinComb {
        LinComb::normalize(
            row.iter()
                .map(|(c, v)| (self.terms[*c as usize].clone(), Q::from_integer(v.clone()))),
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Re-run generation with the degree-(n-1) space added as identities and
    /// require the rank to stay the same.
    pub self_check: bool,
    /// Keep the instance list and provenance for positive certificates.
    pub track: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { self_check: true, track: false }
    }
}

/// Row-reduced basis of the degree-`n` consequence space.
#[derive(Clone, Debug)]
pub struct ConsequenceSpace {
    pub degree: usize,
    pub signature: Signature,
    pub columns: Columns,
    pub echelon: Echelon,
    /// Number of distinct generated instances.
    pub generated: usize,
    /// Instances in generation order with their row scale, kept only when tracking.
    pub instances: Vec<(Instance, Q)>,
}

impl ConsequenceSpace {
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn codimension(&self) -> usize {
        self.columns.len() - self.rank()
    }

    /// Reduced row echelon basis as normalized linear combinations.
    pub fn basis(&self) -> Vec<LinComb> {
        self.echelon.rref().iter().map(|r| self.columns.lincomb(r)).collect()
    }

    pub fn contains(&self, l: &LinComb) -> Result<bool> {
        if l.is_zero() {
            return Ok(true);
        }
        Ok(self.echelon.reduce(self.columns.row(l)?).is_empty())
    }

    /// Normal form of `l` modulo the space (zero iff `l` is a consequence).
    pub fn remainder(&self, l: &LinComb) -> Result<LinComb> {
        Ok(self.columns.lincomb(&self.echelon.reduce(self.columns.row(l)?)))
    }
}

/// Hard refusal for signatures/degrees outside the supported range.
pub fn check_limits(sig: &Signature, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Structural("degree must be positive".into()));
    }
    enumerate::check_degree(sig, n)
}

/// All instances of degree `n` for identities of degree ≤ `n`, deduplicated,
/// in a deterministic order.
pub fn generate_instances(s: &IdentitySystem, n: usize) -> Result<Vec<Instance>> {
    let symbols = s.signature.symbols();
    let shapes: Vec<Vec<Term>> = (0..=n)
        .map(|d| if d == 0 { vec![] } else { enumerate::shapes(&symbols, d) })
        .collect();
    let perms = Perm::all(n);
    let mut jobs = Vec::new();
    for id in s.identities.iter().filter(|i| i.degree <= n && !i.lhs.is_zero()) {
        let k = id.degree;
        for d in 1..=n + 1 - k {
            for ctx in &shapes[d] {
                for hole in 1..=d as u32 {
                    jobs.push((id, ctx, hole, n + 1 - d));
                }
            }
        }
    }
    let per_job: Vec<Vec<Instance>> = jobs
        .par_iter()
        .map(|(id, ctx, hole, inner_total)| {
            let mut out = Vec::new();
            for parts in enumerate::compositions(*inner_total, id.degree) {
                let mut combos: Vec<Vec<Term>> = vec![vec![]];
                for &m in &parts {
                    combos = combos
                        .into_iter()
                        .flat_map(|p| {
                            shapes[m].iter().map(move |t| {
                                let mut q = p.clone();
                                q.push(t.clone());
                                q
                            })
                        })
                        .collect();
                }
                for inners in combos {
                    for perm in &perms {
                        out.push(Instance {
                            identity: id.name.clone(),
                            context: (*ctx).clone(),
                            hole: *hole,
                            inners: inners.clone(),
                            perm: perm.clone(),
                        });
                    }
                }
            }
            out
        })
        .collect();
    Ok(per_job.into_iter().flatten().collect())
}

/// An expanded instance as a primitive integer row with `row = scale · instance`.
struct Expanded {
    inst: Instance,
    row: Row,
    scale: Q,
}

/// Expands instances and drops duplicates (up to scaling), keeping the first.
fn expand_rows(s: &IdentitySystem, cols: &Columns, instances: Vec<Instance>) -> Result<Vec<Expanded>> {
    let rows: Vec<Result<Option<Expanded>>> = instances
        .into_par_iter()
        .map(|inst| {
            let l = inst.expand(s)?;
            let mut row = cols.row(&l)?;
            if row.is_empty() {
                return Ok(None);
            }
            crate::linalg::make_primitive(&mut row);
            let (first, c) = l.iter().next().expect("nonzero");
            debug_assert_eq!(cols.index[first], row[0].0);
            let scale = Q::from_integer(row[0].1.clone()) / c;
            Ok(Some(Expanded { inst, row, scale }))
        })
        .collect();
    let mut seen: HashSet<Row> = HashSet::new();
    let mut out = Vec::new();
    for r in rows {
        let Some(e) = r? else { continue };
        if seen.insert(e.row.clone()) {
            out.push(e);
        }
    }
    Ok(out)
}

fn build(s: &IdentitySystem, n: usize, track: bool) -> Result<ConsequenceSpace> {
    let cols = Columns::new(&s.signature, n);
    let instances = generate_instances(s, n)?;
    let rows = expand_rows(s, &cols, instances)?;
    let mut echelon = Echelon::new();
    let mut kept = Vec::new();
    let generated = rows.len();
    for (k, e) in rows.into_iter().enumerate() {
        if track {
            echelon.insert_tracked(e.row, Some(vec![(k, Q::from_integer(1.into()))]));
            kept.push((e.inst, e.scale));
        } else {
            echelon.insert(e.row);
        }
        if echelon.rank() == cols.len() && !track {
            break;
        }
    }
    Ok(ConsequenceSpace {
        degree: n,
        signature: s.signature.clone(),
        columns: cols,
        echelon,
        generated,
        instances: kept,
    })
}

pub fn consequence_space(s: &IdentitySystem, n: usize) -> Result<ConsequenceSpace> {
    consequence_space_with(s, n, Options::default())
}

pub fn consequence_space_with(s: &IdentitySystem, n: usize, opts: Options) -> Result<ConsequenceSpace> {
    check_limits(&s.signature, n)?;
    let space = build(s, n, opts.track)?;
    if opts.self_check && n >= 2 {
        let lower = build(s, n - 1, false)?;
        let mut ids = s.identities.clone();
        for (k, b) in lower.basis().into_iter().enumerate() {
            ids.push(Identity {
                name: format!("__lower_{k}"),
                degree: n - 1,
                lhs: b,
            });
        }
        let closed = IdentitySystem {
            name: s.name.clone(),
            signature: s.signature.clone(),
            identities: ids,
        };
        let again = build(&closed, n, false)?;
        if again.rank() != space.rank() {
            return Err(Error::Structural(format!(
                "consequence self-check failed at degree {n}: rank {} vs {} after re-substitution",
                space.rank(),
                again.rank()
            )));
        }
    }
    Ok(space)
}

pub fn codimension(s: &IdentitySystem, n: usize) -> Result<usize> {
    Ok(consequence_space(s, n)?.codimension())
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `Φ = Σ c_i · instance_i`.
    Combination(Vec<(Instance, Q)>),
    /// A functional on degree-`n` monomials vanishing on every instance but not on `Φ`.
    Functional(Vec<(Term, Q)>),
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub degree: usize,
    pub certificate: Certificate,
}

impl Membership {
    pub fn to_json(&self) -> CertificateJson {
        match &self.certificate {
            Certificate::Combination(v) => CertificateJson {
                kind: "combination",
                entries: v.iter().map(|(i, c)| (i.describe(), fmt_q(c))).collect(),
            },
            Certificate::Functional(v) => CertificateJson {
                kind: "functional",
                entries: v.iter().map(|(t, c)| (t.to_string(), fmt_q(c))).collect(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub kind: &'static str,
    pub entries: Vec<(String, String)>,
}

/// Decides whether `phi` lies in the consequence space of `s` and returns a
/// certificate either way.
pub fn is_consequence(phi: &LinComb, s: &IdentitySystem) -> Result<Membership> {
    let Some(n) = phi.degree() else {
        return Ok(Membership { member: true, degree: 0, certificate: Certificate::Combination(vec![]) });
    };
    phi.check_multilinear(n)?;
    for t in phi.terms() {
        s.signature.check_term(t)?;
    }
    let space = consequence_space_with(s, n, Options { self_check: false, track: true })?;
    let target = space.columns.row(phi)?;
    if let Some(coeffs) = space.echelon.express(target.clone()) {
        let comb = coeffs
            .into_iter()
            .map(|(k, c)| {
                let (inst, scale) = &space.instances[k];
                (inst.clone(), c * scale)
            })
            .collect();
        return Ok(Membership { member: true, degree: n, certificate: Certificate::Combination(comb) });
    }
    let functional = separating_functional(&space, &target)
        .ok_or_else(|| Error::Structural("no separating functional found".into()))?;
    Ok(Membership { member: false, degree: n, certificate: Certificate::Functional(functional) })
}

/// From the reduced echelon form `R`, a non-pivot column `c` where the remainder
/// of the target is nonzero gives `λ(v) = v_c − Σ_p (R_p[c] / R_p[p]) v_p`.
fn separating_functional(space: &ConsequenceSpace, target: &Row) -> Option<Vec<(Term, Q)>> {
    let rem = space.echelon.reduce(target.clone());
    let c = rem.first()?.0;
    let mut lambda: Vec<(u32, Q)> = vec![(c, Q::from_integer(1.into()))];
    for r in space.echelon.rref() {
        if let Ok(pos) = r.binary_search_by_key(&c, |e| e.0) {
            let coef = Q::new(r[pos].1.clone(), r[0].1.clone());
            lambda.push((r[0].0, -coef));
        }
    }
    lambda.sort_by_key(|e| e.0);
    Some(
        lambda
            .into_iter()
            .map(|(col, v)| (space.columns.terms[col as usize].clone(), v))
            .collect(),
    )
}

fn apply_functional(f: &[(Term, Q)], l: &LinComb) -> Q {
    f.iter().fold(Q::zero(), |acc, (t, c)| acc + c * l.coeff(t))
}

/// Checks a certificate independently of the elimination that produced it:
/// a combination must re-expand to `phi`; a functional must vanish on every
/// generated instance and not on `phi`.
pub fn verify_certificate(phi: &LinComb, s: &IdentitySystem, m: &Membership) -> Result<bool> {
    match &m.certificate {
        Certificate::Combination(v) => {
            let mut sum = LinComb::zero();
            for (inst, c) in v {
                sum.add_scaled(&inst.expand(s)?, c);
            }
            Ok(m.member && sum == *phi)
        }
        Certificate::Functional(f) => {
            if m.member || apply_functional(f, phi).is_zero() {
                return Ok(false);
            }
            let instances = generate_instances(s, m.degree)?;
            let ok = instances
                .par_iter()
                .map(|inst| inst.expand(s).map(|l| apply_functional(f, &l).is_zero()))
                .collect::<Result<Vec<bool>>>()?;
            Ok(ok.into_iter().all(|b| b))
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `(system, identity)` pairs not implied by the other system.
    pub missing: Vec<(String, String)>,
}

/// Every identity of degree ≤ `n_max` in each system is a consequence of the other.
pub fn systems_equivalent(a: &IdentitySystem, b: &IdentitySystem, n_max: usize) -> Result<Equivalence> {
    a.signature.ensure_same(&b.signature)?;
    let mut missing = Vec::new();
    for (from, to) in [(a, b), (b, a)] {
        let mut spaces: HashMap<usize, ConsequenceSpace> = HashMap::new();
        for id in to.identities.iter().filter(|i| i.degree <= n_max) {
            if id.lhs.is_zero() {
                continue;
            }
            if !spaces.contains_key(&id.degree) {
                let sp = consequence_space_with(from, id.degree, Options { self_check: false, track: false })?;
                spaces.insert(id.degree, sp);
            }
            if !spaces[&id.degree].contains(&id.lhs)? {
                missing.push((to.name.clone(), id.name.clone()));
            }
        }
    }
    Ok(Equivalence { equivalent: missing.is_empty(), missing })
}
