mod common;

use common::*;
use decotree::algebra::builtin::c2;
use decotree::algebra::{unit_vec, zero_vec};
use decotree::comtrias::{
    compose_subsets, corolla_compose, corolla_from_monomial, perp, signature, vdash, verify_comtrias_presentation,
    Corolla,
};
use decotree::{OpSym, Perm, Subset, Term};
use proptest::prelude::*;

fn s(v: &[u32]) -> Subset {
    Subset::from_elements(v.iter().copied()).unwrap()
}

fn e(n: usize, h: &[u32]) -> Corolla {
    Corolla::new(n, s(h)).unwrap()
}

#[test]
fn compose_subsets_examples() {
    assert_eq!(compose_subsets(s(&[1]), &[(3, s(&[2]))]).unwrap(), s(&[2]));
    assert_eq!(compose_subsets(s(&[2]), &[(2, s(&[1])), (2, s(&[1, 2]))]).unwrap(), s(&[3, 4]));
    assert_eq!(compose_subsets(s(&[1, 2]), &[(2, s(&[2])), (2, s(&[1]))]).unwrap(), s(&[2, 3]));
    assert!(compose_subsets(Subset::EMPTY, &[(2, s(&[1]))]).is_err());
    assert!(compose_subsets(s(&[1]), &[(2, Subset::EMPTY)]).is_err());
}

#[test]
fn corolla_compose_examples() {
    let c = e(3, &[1, 3]);
    assert_eq!(corolla_compose(e(1, &[1]), &[c]).unwrap(), c);
    assert_eq!(corolla_compose(e(2, &[2]), &[e(2, &[1]), e(2, &[1, 2])]).unwrap(), e(4, &[3, 4]));
    assert!(corolla_compose(e(2, &[2]), &[e(2, &[1])]).is_err());
}

#[test]
fn monomial_identification_examples() {
    assert_eq!(corolla_from_monomial(&vdash(x(2), perp(x(1), x(3)))).unwrap(), e(3, &[1, 3]));
    assert_eq!(corolla_from_monomial(&perp(x(1), x(2))).unwrap(), e(2, &[1, 2]));
    assert_eq!(corolla_from_monomial(&vdash(vdash(x(1), x(2)), x(3))).unwrap(), e(3, &[3]));
    assert_eq!(corolla_from_monomial(&vdash(vdash(x(2), x(1)), x(3))).unwrap(), e(3, &[3]));
    assert_eq!(corolla_from_monomial(&vdash(perp(x(1), x(2)), x(3))).unwrap(), e(3, &[3]));
}

#[test]
fn corolla_counts() {
    for n in 1..=5 {
        assert_eq!(Corolla::all(n).len(), (1 << n) - 1);
    }
    assert_eq!(Corolla::all(3).len(), 7);
}

#[test]
fn c2_products() {
    let a = c2();
    let (vd, pp) = (OpSym::plain("vdash"), OpSym::plain("perp"));
    assert_eq!(a.product_basis(&vd, &[1, 0]).unwrap(), &zero_vec(2));
    assert_eq!(a.product_basis(&vd, &[0, 1]).unwrap(), &unit_vec(2, 1));
    assert_eq!(a.product_basis(&vd, &[0, 0]).unwrap(), &unit_vec(2, 0));
    assert_eq!(a.product_basis(&pp, &[1, 1]).unwrap(), &unit_vec(2, 1));
    assert_eq!(a.product_basis(&pp, &[0, 1]).unwrap(), &zero_vec(2));
}

#[test]
fn presentation_and_lemma_verified() {
    let r = verify_comtrias_presentation(4).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
    assert!(r.lemma_cases > 0);
}

/// The lemma's smallest case by hand: e^(2)_K(e^(1)_{1}, e^(1)_{1}) over
/// K ∈ P(2) hits each H ∈ P(2) exactly once.
#[test]
fn lemma_smallest_case() {
    let mut hits: Vec<Subset> = Subset::nonempty_subsets(2)
        .into_iter()
        .map(|k| corolla_compose(Corolla::new(2, k).unwrap(), &[e(1, &[1]), e(1, &[1])]).unwrap().h)
        .collect();
    hits.sort();
    let mut all = Subset::nonempty_subsets(2);
    all.sort();
    assert_eq!(hits, all);
}

/// Every choice with m ≤ 3 and n_i ≤ 3, checked without the library's
/// composition: the membership condition written out as offsets.
#[test]
fn cardinality_and_perm_closure_exhaustive() {
    for m in 1..=3usize {
        for ns in product(&vec![vec![1usize, 2, 3]; m]) {
            let hs_choices: Vec<Vec<Subset>> = ns.iter().map(|&n| Subset::nonempty_subsets(n as u32)).collect();
            for hs in product(&hs_choices) {
                let parts: Vec<(usize, Subset)> = ns.iter().copied().zip(hs.iter().copied()).collect();
                for k in Subset::nonempty_subsets(m as u32) {
                    let got = compose_subsets(k, &parts).unwrap();
                    let mut want = Vec::new();
                    let mut off = 0;
                    for (i, (n, h)) in parts.iter().enumerate() {
                        if k.contains(i as u32 + 1) {
                            want.extend(h.iter().map(|l| l + off));
                        }
                        off += *n as u32;
                    }
                    assert_eq!(got.elements(), want);
                    let card: usize = k.iter().map(|i| parts[i as usize - 1].1.len()).sum();
                    assert_eq!(got.len(), card);
                    if k.is_singleton() && hs.iter().all(|h| h.is_singleton()) {
                        assert!(got.is_singleton());
                    }
                }
            }
        }
    }
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![vec![]];
    for c in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn corolla_strategy(max_n: usize) -> impl Strategy<Value = Corolla> {
    (1..=max_n).prop_flat_map(|n| (Just(n), 1..(1u32 << n)).prop_map(|(n, b)| Corolla::new(n, Subset::from_bits(b)).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn corolla_composition_is_associative(
        outer in corolla_strategy(3),
        inner in proptest::collection::vec(corolla_strategy(3), 3),
        leaves in proptest::collection::vec(corolla_strategy(2), 9),
    ) {
        let inner = &inner[..outer.n];
        let total: usize = inner.iter().map(|c| c.n).sum();
        let leaves = &leaves[..total];
        let two_step = corolla_compose(corolla_compose(outer, inner).unwrap(), leaves).unwrap();
        let mut blocks = Vec::new();
        let mut at = 0;
        for c in inner {
            blocks.push(corolla_compose(*c, &leaves[at..at + c.n]).unwrap());
            at += c.n;
        }
        prop_assert_eq!(two_step, corolla_compose(outer, &blocks).unwrap());
    }

    /// The identification of monomials with corollas is a map of operads:
    /// it turns grafting into corolla composition and leaf relabeling into `σ(H)`.
    #[test]
    fn identification_respects_graft_and_act(seed in any::<u64>(), n in 1..=3usize) {
        let mut r = rng(seed);
        let sig = signature();
        let u = random_monomial(&sig, n, &mut r);
        let vs: Vec<Term> = (0..n).map(|i| random_monomial(&sig, 1 + (i + seed as usize) % 2, &mut r)).collect();
        let cu = corolla_from_monomial(&u).unwrap();
        let cvs: Vec<Corolla> = vs.iter().map(|v| corolla_from_monomial(v).unwrap()).collect();
        let grafted = u.graft(&vs).unwrap();
        prop_assert_eq!(corolla_from_monomial(&grafted).unwrap(), corolla_compose(cu, &cvs).unwrap());
        let all = Perm::all(grafted.degree());
        let sigma = &all[seed as usize % all.len()];
        prop_assert_eq!(
            corolla_from_monomial(&grafted.act(sigma).unwrap()).unwrap(),
            corolla_from_monomial(&grafted).unwrap().act(sigma).unwrap()
        );
    }
}
