mod common;

use common::*;
use decotree::algebra::builtin::c2;
use decotree::algebra::construct::tensor_replicated;
use decotree::algebra::is_zero_vec;
use decotree::comtrias::perm_axioms;
use decotree::consequence::{
    codimension, consequence_space, is_consequence, systems_equivalent, verify_certificate, Certificate,
};
use decotree::enumerate::monomial_count;
use decotree::presets;
use decotree::replication::replicate_identities;
use decotree::samples::lie_zoo;
use decotree::splitting::{split_identities, SplitMode};
use decotree::{Error, Identity, IdentitySystem, LinComb, Mode, Term};
use proptest::prelude::*;

fn system(name: &str) -> IdentitySystem {
    presets::workspace().unwrap().system(name).unwrap().clone()
}

fn lc(t: Term) -> LinComb {
    LinComb::from_term(t)
}

#[test]
fn small_codimensions() {
    let sp = consequence_space(&system("as"), 3).unwrap();
    assert_eq!(sp.rank(), 6);
    assert_eq!(sp.codimension(), 6);
    let empty = IdentitySystem::new("none", bin(), vec![]).unwrap();
    for n in 1..=4 {
        assert_eq!(consequence_space(&empty, n).unwrap().rank(), 0);
    }
    for n in 1..=4 {
        assert_eq!(codimension(&perm_axioms(), n).unwrap(), n);
    }
    assert_eq!(codimension(&system("comtrias_axioms"), 2).unwrap(), 3);
    assert_eq!(codimension(&system("comtrias_axioms"), 3).unwrap(), 7);
    assert_eq!(codimension(&system("as"), 4).unwrap(), 24);
    assert_eq!(codimension(&system("lie"), 3).unwrap(), 2);
    assert_eq!(codimension(&system("lie"), 4).unwrap(), 6);
}

#[test]
fn codimension_products() {
    for (name, c) in [("as", [2, 6]), ("lie", [1, 2])] {
        let s = system(name);
        let di = replicate_identities(&s, Mode::Di).unwrap();
        let tri = replicate_identities(&s, Mode::Tri).unwrap();
        for (k, n) in [2usize, 3].into_iter().enumerate() {
            assert_eq!(codimension(&s, n).unwrap(), c[k]);
            assert_eq!(codimension(&di, n).unwrap(), n * c[k], "di-{name} at {n}");
            assert_eq!(codimension(&tri, n).unwrap(), ((1 << n) - 1) * c[k], "tri-{name} at {n}");
        }
    }
}

#[test]
fn extra_identity_is_independent() {
    let ws = presets::workspace().unwrap();
    let pren3 = ws.system("pren3").unwrap();
    let extra = &ws.identity("extra").unwrap().identity.lhs;
    let r = is_consequence(extra, pren3).unwrap();
    assert!(!r.member);
    assert!(matches!(r.certificate, Certificate::Functional(_)));
    assert!(verify_certificate(extra, pren3, &r).unwrap());

    let pn3 = &pren3.get("pn3").unwrap().lhs;
    let r = is_consequence(pn3, pren3).unwrap();
    assert!(r.member);
    assert!(verify_certificate(pn3, pren3, &r).unwrap());
}

#[test]
fn degree_four_associativity_chain() {
    let phi = lc(m(m(m(x(1), x(2)), x(3)), x(4))).sub(&lc(m(x(1), m(x(2), m(x(3), x(4))))));
    let s = system("as");
    let r = is_consequence(&phi, &s).unwrap();
    assert!(r.member);
    assert!(verify_certificate(&phi, &s, &r).unwrap());
}

#[test]
fn adding_zero_changes_nothing() {
    let s = system("lie");
    let mut t = s.clone();
    t.identities.push(Identity::new("zero", 3, LinComb::zero()).unwrap());
    assert!(systems_equivalent(&s, &t, 3).unwrap().equivalent);
}

#[test]
fn degree_limits_are_refused() {
    let s = system("as");
    assert!(matches!(consequence_space(&s, 6), Err(Error::DegreeLimit { .. })));
    let tri = replicate_identities(&system("lie"), Mode::Tri).unwrap();
    assert!(matches!(consequence_space(&tri, 5), Err(Error::DegreeLimit { .. })));
}

#[test]
fn packaged_presentations_match_their_constructions() {
    let pre = |s: &str| split_identities(&system(s), SplitMode::Pre).unwrap();
    assert!(systems_equivalent(&pre("lie"), &system("left_symmetric"), 3).unwrap().equivalent);
    assert!(systems_equivalent(&pre("as"), &system("dendriform"), 3).unwrap().equivalent);
    assert!(systems_equivalent(&pre("n3"), &system("pren3"), 3).unwrap().equivalent);
    let post = split_identities(&system("as"), SplitMode::Post).unwrap();
    assert_eq!(post.identities.len(), 7);
}

/// The printed mixed identity (with `[x1 ⊣ x2] ⊥ x3` as its middle term)
/// is not an identity of tri-Lie; reading the middle term as
/// `[x1 ⊥ x2] ⊣ x3` gives an equivalent presentation.
#[test]
fn tri_lie_presentations() {
    let tri = replicate_identities(&system("lie"), Mode::Tri).unwrap();
    let literal = system("trilie");
    let eq = systems_equivalent(&tri, &literal, 3).unwrap();
    assert!(!eq.equivalent);
    assert!(eq.missing.contains(&("trilie".to_string(), "tl_mixed".to_string())), "{:?}", eq.missing);
    assert!(systems_equivalent(&tri, &system("trilie_homogeneous"), 3).unwrap().equivalent);

    // a concrete tri-Lie algebra where the printed identity fails
    let so3 = lie_zoo().into_iter().find(|a| a.name == "so3").unwrap();
    let t = tensor_replicated(&c2(), &so3, Mode::Tri).unwrap();
    assert!(t.check_identities(&tri).unwrap().passed);
    let mixed = &literal.get("tl_mixed").unwrap().lhs;
    let mut nonzero = false;
    for idx in decotree::algebra::basis_tuples(t.dim(), 3) {
        nonzero |= !is_zero_vec(&t.evaluate_on_basis(mixed, &idx).unwrap());
    }
    assert!(nonzero);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random degree-3 elements over one binary operation: membership in the
    /// associative ideal matches the certificate, either way.
    #[test]
    fn certificates_reverify(seed in any::<u64>(), k in 1..4usize) {
        let mut r = rng(seed);
        let s = system("as");
        let mut phi = random_lincomb(&bin(), 3, k, &mut r);
        if seed % 2 == 0 {
            // push it into the ideal half of the time
            let sp = consequence_space(&s, 3).unwrap();
            phi = sp.basis().iter().fold(LinComb::zero(), |acc, b| acc.add(b));
        }
        if phi.is_zero() {
            return Ok(());
        }
        let mem = is_consequence(&phi, &s).unwrap();
        prop_assert!(verify_certificate(&phi, &s, &mem).unwrap());
        let remainder = consequence_space(&s, 3).unwrap().remainder(&phi).unwrap();
        prop_assert_eq!(mem.member, remainder.is_zero());
    }

    /// Growing a system only grows its consequence spaces, and every generator
    /// lies in its own space.
    #[test]
    fn monotone_in_the_system(mask in 1u32..64, n in 3..=4usize) {
        let pool: Vec<Identity> = ["as", "perm", "n3"]
            .iter()
            .flat_map(|s| system(s).identities)
            .collect();
        let pick = |bits: u32| {
            let ids = pool.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, id)| id.clone()).collect();
            IdentitySystem::new("sub", bin(), ids).unwrap()
        };
        let small = pick(mask & (mask >> 1));
        let big = pick(mask);
        let sb = consequence_space(&big, n).unwrap();
        for b in consequence_space(&small, n).unwrap().basis() {
            prop_assert!(sb.contains(&b).unwrap());
        }
        for id in &big.identities {
            if id.degree == n {
                prop_assert!(sb.contains(&id.lhs).unwrap());
            }
        }
        prop_assert!(sb.rank() <= monomial_count(&bin(), n));
    }
}
