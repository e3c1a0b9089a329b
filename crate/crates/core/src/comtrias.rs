//! Perm and ComTrias as corollas `e^(n)_H` with set composition.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::lincomb::{Identity, IdentitySystem, LinComb};
use crate::signature::{OpDecl, Signature};
use crate::subset::{Perm, Subset};
use crate::term::{OpSym, Term};

pub const VDASH: &str = "vdash";
pub const PERP: &str = "perp";

/// Basis element `e^(n)_H` of `ComTrias(n)`; Perm is the singleton case.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub struct Corolla {
    pub n: usize,
    pub h: Subset,
}

impl Corolla {
    pub fn new(n: usize, h: Subset) -> Result<Self> {
        if h.is_empty() || !h.is_subset_of(Subset::full(n as u32)) {
            return Err(Error::BadDecoration(format!("{h} is not a nonempty subset of 1..={n}")));
        }
        Ok(Corolla { n, h })
    }

    pub fn is_perm(&self) -> bool {
        self.h.is_singleton()
    }

    /// `e_H · σ = e_{σ(H)}`, matching leaf relabeling on terms.
    pub fn act(&self, sigma: &Perm) -> Result<Corolla> {
        if sigma.len() != self.n {
            return Err(Error::NotBijection(sigma.images().to_vec()));
        }
        Ok(Corolla { n: self.n, h: sigma.image_of(self.h) })
    }

    /// All `2^n - 1` corollas of arity `n`.
    pub fn all(n: usize) -> Vec<Corolla> {
        Subset::nonempty_subsets(n as u32)
            .into_iter()
            .map(|h| Corolla { n, h })
            .collect()
    }
}

impl fmt::Display for Corolla {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e^({})_{}", self.n, self.h)
    }
}

/// `K(H_1, .., H_m)`: `j` belongs to it iff `j = n_1 + .. + n_{k-1} + l`
/// for some `k ∈ K` and `l ∈ H_k`.
pub fn compose_subsets(k: Subset, parts: &[(usize, Subset)]) -> Result<Subset> {
    if k.is_empty() {
        return Err(Error::BadDecoration("outer subset K is empty".into()));
    }
    if k.max() as usize > parts.len() {
        return Err(Error::BadDecoration(format!(
            "K = {k} exceeds the number of parts {}",
            parts.len()
        )));
    }
    let total: usize = parts.iter().map(|p| p.0).sum();
    if total > crate::subset::MAX_ELEMENT as usize {
        return Err(Error::Unsupported(format!("total arity {total} too large")));
    }
    let mut out = Subset::EMPTY;
    let mut offset = 0u32;
    for (idx, &(ni, hi)) in parts.iter().enumerate() {
        if hi.is_empty() || !hi.is_subset_of(Subset::full(ni as u32)) {
            return Err(Error::BadDecoration(format!(
                "part {} has subset {hi} outside P({ni})",
                idx + 1
            )));
        }
        if k.contains(idx as u32 + 1) {
            out = out.union(hi.shifted(offset));
        }
        offset += ni as u32;
    }
    Ok(out)
}

pub fn corolla_compose(outer: Corolla, inners: &[Corolla]) -> Result<Corolla> {
    if inners.len() != outer.n {
        return Err(Error::Structural(format!(
            "corolla of arity {} composed with {} inner corollas",
            outer.n,
            inners.len()
        )));
    }
    let parts: Vec<(usize, Subset)> = inners.iter().map(|c| (c.n, c.h)).collect();
    let h = compose_subsets(outer.h, &parts)?;
    Ok(Corolla { n: parts.iter().map(|p| p.0).sum(), h })
}

/// The two-operation signature `{⊢, ⊥}` named `vdash`, `perp`.
pub fn signature() -> Signature {
    Signature::new("ct", vec![OpDecl::new(VDASH, 2), OpDecl::new(PERP, 2)]).expect("static signature")
}

pub fn vdash(a: Term, b: Term) -> Term {
    Term::app(VDASH, vec![a, b])
}

pub fn perp(a: Term, b: Term) -> Term {
    Term::app(PERP, vec![a, b])
}

fn x(i: u32) -> Term {
    Term::var(i)
}

fn eq(name: &str, lhs: Term, rhs: Term) -> Identity {
    let l = LinComb::from_term(lhs).sub(&LinComb::from_term(rhs));
    Identity::from_lincomb(name, l).expect("static identity")
}

/// The five displayed ComTrias axioms as `(lhs, rhs)` pairs.
pub fn displayed_axioms() -> Vec<(&'static str, Term, Term)> {
    vec![
        ("vdash_assoc", vdash(vdash(x(1), x(2)), x(3)), vdash(x(1), vdash(x(2), x(3)))),
        ("vdash_perm", vdash(vdash(x(1), x(2)), x(3)), vdash(vdash(x(2), x(1)), x(3))),
        ("perp_vdash", vdash(perp(x(1), x(2)), x(3)), vdash(vdash(x(1), x(2)), x(3))),
        ("vdash_perp", vdash(x(1), perp(x(2), x(3))), perp(vdash(x(1), x(2)), x(3))),
        ("perp_assoc", perp(perp(x(1), x(2)), x(3)), perp(x(1), perp(x(2), x(3)))),
    ]
}

/// The displayed axioms plus commutativity of `⊥`, which the set-indexed
/// basis forces but the displayed list omits.
pub fn axiom_pairs() -> Vec<(&'static str, Term, Term)> {
    let mut v = displayed_axioms();
    v.push(("perp_comm", perp(x(1), x(2)), perp(x(2), x(1))));
    v
}

pub fn comtrias_axioms() -> IdentitySystem {
    let ids = axiom_pairs().into_iter().map(|(n, l, r)| eq(n, l, r)).collect();
    IdentitySystem::new("comtrias_axioms", signature(), ids).expect("static system")
}

/// Perm as `⊢` alone: associative and left-commutative in the first two slots.
pub fn perm_signature() -> Signature {
    Signature::new("perm_sig", vec![OpDecl::new(VDASH, 2)]).expect("static signature")
}

pub fn perm_axioms() -> IdentitySystem {
    let ids = displayed_axioms()
        .into_iter()
        .take(2)
        .map(|(n, l, r)| eq(n, l, r))
        .collect();
    IdentitySystem::new("perm_axioms", perm_signature(), ids).expect("static system")
}

fn generator(op: &OpSym) -> Result<Corolla> {
    if op.deco.is_some() {
        return Err(Error::SignatureMismatch(format!("`{op}` is decorated")));
    }
    match &*op.name {
        VDASH => Ok(Corolla { n: 2, h: Subset::singleton(2) }),
        PERP => Ok(Corolla { n: 2, h: Subset::full(2) }),
        _ => Err(Error::SignatureMismatch(format!(
            "`{op}` is not one of `{VDASH}`, `{PERP}`"
        ))),
    }
}

/// Evaluates a monomial in the corolla model: generators are `⊢ = e_{2}`,
/// `⊥ = e_{1,2}`, and nodes compose by set composition.
pub fn model_corolla(u: &Term) -> Result<Corolla> {
    u.check_multilinear()?;
    let planar = planar_corolla(u)?;
    let leaves = u.leaves();
    let h = Subset::from_elements(planar.h.iter().map(|p| leaves[p as usize - 1]))?;
    Ok(Corolla { n: planar.n, h })
}

fn planar_corolla(u: &Term) -> Result<Corolla> {
    match u {
        Term::Var(_) => Ok(Corolla { n: 1, h: Subset::singleton(1) }),
        Term::App(op, args) => {
            let g = generator(op)?;
            if args.len() != 2 {
                return Err(Error::Structural(format!("`{op}` must be binary")));
            }
            let inner = args.iter().map(planar_corolla).collect::<Result<Vec<_>>>()?;
            corolla_compose(g, &inner)
        }
    }
}

/// Largest degree accepted by the rewrite-based normal form search.
pub const NORMAL_FORM_LIMIT: usize = 5;

/// Identifies a monomial with its corolla by rewriting it to the form
/// `x_{j1} ⊢ (.. ⊢ (x_{i1} ⊥ .. ⊥ x_{ik}))` with `j1 < j2 < ..`.
///
/// The search explores the whole equivalence class of `u` under the axioms
/// (applied in both directions at any position) and reads `H` off every
/// normal form it meets. Two normal forms with different `H`, or none at all,
/// is reported as presentation-ambiguous.
pub fn corolla_from_monomial(u: &Term) -> Result<Corolla> {
    Ok(normal_form_class(u)?.0)
}

/// The corolla together with every member of the explored class.
pub fn normal_form_class(u: &Term) -> Result<(Corolla, Vec<Term>)> {
    u.check_multilinear()?;
    check_ops(u)?;
    let n = u.degree();
    if n > NORMAL_FORM_LIMIT {
        return Err(Error::DegreeLimit {
            degree: n,
            limit: NORMAL_FORM_LIMIT,
            what: "the ComTrias normal-form search".into(),
        });
    }
    let rules = axiom_pairs();
    let mut seen: HashSet<Term> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(u.clone());
    queue.push_back(u.clone());
    let mut found: Option<Subset> = None;
    while let Some(t) = queue.pop_front() {
        if let Some(h) = read_normal_form(&t) {
            match found {
                None => found = Some(h),
                Some(prev) if prev != h => {
                    return Err(Error::PresentationAmbiguous(format!(
                        "{u} rewrites to normal forms with H = {prev} and H = {h}"
                    )))
                }
                _ => {}
            }
        }
        for s in rewrites(&t, &rules) {
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    match found {
        Some(h) => Ok((Corolla { n, h }, seen.into_iter().collect())),
        None => Err(Error::PresentationAmbiguous(format!(
            "no normal form reachable from {u}"
        ))),
    }
}

fn check_ops(u: &Term) -> Result<()> {
    for op in u.ops() {
        generator(op)?;
    }
    Ok(())
}

/// `Some(H)` if `t` is a right-nested ascending `⊢`-chain ending in a pure `⊥` cluster.
fn read_normal_form(t: &Term) -> Option<Subset> {
    let mut cur = t;
    let mut last_j = 0u32;
    loop {
        match cur {
            Term::App(op, args) if &*op.name == VDASH => {
                let Term::Var(j) = args[0] else { return None };
                if j <= last_j {
                    return None;
                }
                last_j = j;
                cur = &args[1];
            }
            _ => break,
        }
    }
    if cur.ops().iter().all(|op| &*op.name == PERP) {
        Some(cur.var_set())
    } else {
        None
    }
}

/// Matches `pattern` (variables `x1..x3` as metavariables) against `t`.
fn pattern_match<'a>(pattern: &Term, t: &'a Term, bind: &mut [Option<&'a Term>; 3]) -> bool {
    match (pattern, t) {
        (Term::Var(i), _) => {
            let slot = &mut bind[*i as usize - 1];
            match slot {
                None => {
                    *slot = Some(t);
                    true
                }
                Some(prev) => *prev == t,
            }
        }
        (Term::App(p, ps), Term::App(q, qs)) => {
            p == q && ps.iter().zip(qs).all(|(a, b)| pattern_match(a, b, bind))
        }
        _ => false,
    }
}

fn instantiate(pattern: &Term, bind: &[Option<&Term>; 3]) -> Term {
    match pattern {
        Term::Var(i) => bind[*i as usize - 1].expect("bound").clone(),
        Term::App(op, args) => Term::App(op.clone(), args.iter().map(|a| instantiate(a, bind)).collect()),
    }
}

/// One-step rewrites of `t` by any rule in either direction at any position.
fn rewrites(t: &Term, rules: &[(&'static str, Term, Term)]) -> Vec<Term> {
    let mut out = Vec::new();
    for (_, l, r) in rules {
        for (from, to) in [(l, r), (r, l)] {
            let mut bind = [None, None, None];
            if pattern_match(from, t, &mut bind) {
                out.push(instantiate(to, &bind));
            }
        }
    }
    if let Term::App(op, args) = t {
        for (k, a) in args.iter().enumerate() {
            for s in rewrites(a, rules) {
                let mut new_args = args.clone();
                new_args[k] = s;
                out.push(Term::App(op.clone(), new_args));
            }
        }
    }
    out
}

/// The normal-form monomial representing `e^(n)_H`.
pub fn representative(c: Corolla) -> Term {
    let (cluster, chain): (Vec<u32>, Vec<u32>) = (1..=c.n as u32).partition(|&i| c.h.contains(i));
    let mut t = cluster
        .iter()
        .rev()
        .map(|&i| Term::var(i))
        .reduce(|acc, v| perp(v, acc))
        .expect("nonempty H");
    for &j in chain.iter().rev() {
        t = vdash(Term::var(j), t);
    }
    t
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PresentationReport {
    pub max_arity: usize,
    pub monomials_checked: usize,
    pub classes: usize,
    pub axiom_instances: usize,
    pub lemma_cases: usize,
    pub failures: Vec<String>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cross-checks the rewrite identification against the set-composition model
/// on every monomial up to `max_arity`, checks every axiom instance, and
/// checks the composition-sum lemma for `m ≤ 3`, `n_i ≤ 3`.
pub fn verify_comtrias_presentation(max_arity: usize) -> Result<PresentationReport> {
    if max_arity > NORMAL_FORM_LIMIT {
        return Err(Error::DegreeLimit {
            degree: max_arity,
            limit: NORMAL_FORM_LIMIT,
            what: "verify_comtrias_presentation".into(),
        });
    }
    let mut rep = PresentationReport { max_arity, ..Default::default() };
    let sig = signature();
    let mut memo: HashMap<Term, Corolla> = HashMap::new();
    for n in 1..=max_arity {
        for u in enumerate::monomials(&sig, n) {
            rep.monomials_checked += 1;
            let via_rewrite = match memo.get(&u) {
                Some(c) => Ok(*c),
                None => normal_form_class(&u).map(|(c, class)| {
                    rep.classes += 1;
                    for t in class {
                        memo.insert(t, c);
                    }
                    c
                }),
            };
            let via_model = model_corolla(&u);
            match (via_rewrite, via_model) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => rep.failures.push(format!("{u}: rewrite gives {a:?}, model gives {b:?}")),
            }
        }
    }
    for (name, l, r) in axiom_pairs() {
        for sigma in Perm::all(l.degree()) {
            rep.axiom_instances += 1;
            let (l, r) = (l.act(&sigma)?, r.act(&sigma)?);
            let a = model_corolla(&l)?;
            let b = model_corolla(&r)?;
            let c = corolla_from_monomial(&l)?;
            let d = corolla_from_monomial(&r)?;
            if !(a == b && b == c && c == d) {
                rep.failures.push(format!("axiom {name} under {:?}: {a} {b} {c} {d}", sigma.images()));
            }
        }
    }
    for m in 1..=3usize {
        for ns in tuples(m, 3) {
            rep.lemma_cases += 2;
            if let Some(f) = lemma_mismatch(&ns, false) {
                rep.failures.push(f);
            }
            if let Some(f) = lemma_mismatch(&ns, true) {
                rep.failures.push(f);
            }
        }
    }
    Ok(rep)
}

/// All tuples of length `m` with entries in `1..=max`.
fn tuples(m: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

type LemmaTerm = (Subset, Vec<Subset>);

fn choices(n: usize, perm_only: bool) -> Vec<Subset> {
    if perm_only {
        (1..=n as u32).map(Subset::singleton).collect()
    } else {
        Subset::nonempty_subsets(n as u32)
    }
}

/// Left side: for each `H`, the tuples `(K, H_1..H_m)` composing to `H`,
/// built by splitting `H` into blocks (`K` and `H_k`, `k ∈ K`, are forced;
/// `H_j`, `j ∉ K`, are free). Right side: every tuple. `None` if equal as multisets.
fn lemma_mismatch(ns: &[usize], perm_only: bool) -> Option<String> {
    let n: usize = ns.iter().sum();
    let mut left: Vec<LemmaTerm> = Vec::new();
    for h in choices(n, perm_only) {
        let mut k = Subset::EMPTY;
        let mut forced: Vec<Option<Subset>> = Vec::new();
        let mut offset = 0u32;
        for (idx, &ni) in ns.iter().enumerate() {
            let block = h.intersection(Subset::full(ni as u32).shifted(offset));
            if block.is_empty() {
                forced.push(None);
            } else {
                k.insert(idx as u32 + 1);
                forced.push(Some(Subset::from_bits(block.bits() >> offset)));
            }
            offset += ni as u32;
        }
        if perm_only && !k.is_singleton() {
            continue;
        }
        let mut partial: Vec<Vec<Subset>> = vec![vec![]];
        for (f, &ni) in forced.iter().zip(ns) {
            let opts = match f {
                Some(s) => vec![*s],
                None => choices(ni, perm_only),
            };
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    opts.iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(*s);
                        q
                    })
                })
                .collect();
        }
        left.extend(partial.into_iter().map(|hs| (k, hs)));
    }
    let mut right: Vec<LemmaTerm> = Vec::new();
    for k in choices(ns.len(), perm_only) {
        let mut partial: Vec<Vec<Subset>> = vec![vec![]];
        for &ni in ns {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices(ni, perm_only).into_iter().map(move |s| {
                        let mut q = p.clone();
                        q.push(s);
                        q
                    })
                })
                .collect();
        }
        right.extend(partial.into_iter().map(|hs| (k, hs)));
    }
    left.sort();
    right.sort();
    if left == right {
        None
    } else {
        Some(format!(
            "composition-sum lemma fails for n = {ns:?} (perm_only = {perm_only}): {} vs {} terms",
            left.len(),
            right.len()
        ))
    }
}
