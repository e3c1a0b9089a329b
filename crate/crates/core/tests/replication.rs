mod common;

use common::*;
use decotree::algebra::builtin::{c2, comtrias_field};
use decotree::algebra::construct::{corolla_value, tensor_replicated};
use decotree::algebra::{unit_vec, Vector};
use decotree::comtrias::Corolla;
use decotree::consequence::is_consequence;
use decotree::enumerate::monomials;
use decotree::morphism::Morphism;
use decotree::presets;
use decotree::rational::q;
use decotree::replication::{decorate, decorate_term, erase_decorations, replicate_identities, replicate_morphism};
use decotree::{Error, FiniteAlgebra, IdentitySystem, LinComb, Mode, OpDecl, OpSym, Signature, Subset, Term, Q};
use proptest::prelude::*;

fn s(v: &[u32]) -> Subset {
    Subset::from_elements(v.iter().copied()).unwrap()
}

fn md(h: &[u32], a: Term, b: Term) -> Term {
    Term::deco("m", s(h), vec![a, b])
}

fn lc(t: Term) -> LinComb {
    LinComb::from_term(t)
}

#[test]
fn decorate_examples() {
    assert_eq!(decorate_term(&m(x(1), x(2)), s(&[1, 2]), Mode::Tri).unwrap(), md(&[1, 2], x(1), x(2)));
    let u = m(x(1), m(x(2), x(3)));
    assert_eq!(decorate_term(&u, s(&[2]), Mode::Tri).unwrap(), md(&[2], x(1), md(&[1], x(2), x(3))));
    assert_eq!(decorate_term(&u, s(&[1, 3]), Mode::Tri).unwrap(), md(&[1, 2], x(1), md(&[2], x(2), x(3))));
    assert!(matches!(decorate_term(&u, s(&[1, 3]), Mode::Di), Err(Error::BadDecoration(_))));
    assert!(decorate_term(&u, s(&[4]), Mode::Tri).is_err());
}

#[test]
fn erase_examples() {
    let d = md(&[2], x(1), md(&[1], x(2), x(3)));
    assert_eq!(d.erase(), m(x(1), m(x(2), x(3))));
    let l = lc(md(&[1], x(1), x(2))).add(&lc(md(&[2], x(1), x(2))));
    assert_eq!(erase_decorations(&l), LinComb::monomial(m(x(1), x(2)), q(2)));
}

#[test]
fn di_lie_identifies_the_two_brackets_and_is_leibniz() {
    let ws = presets::workspace().unwrap();
    let di = replicate_identities(ws.system("lie").unwrap(), Mode::Di).unwrap();
    let b = |h: u32, a: Term, c: Term| Term::deco("br", Subset::singleton(h), vec![a, c]);
    // [x1 ⊢ x2] = -[x2 ⊣ x1]
    let flip = lc(b(2, x(1), x(2))).add(&lc(b(1, x(2), x(1))));
    assert!(is_consequence(&flip, &di).unwrap().member);
    // right Leibniz for ⊣: [[x1 ⊣ x2] ⊣ x3] = [[x1 ⊣ x3] ⊣ x2] + [x1 ⊣ [x2 ⊣ x3]]
    let leibniz = lc(b(1, b(1, x(1), x(2)), x(3)))
        .sub(&lc(b(1, b(1, x(1), x(3)), x(2))))
        .sub(&lc(b(1, x(1), b(1, x(2), x(3)))));
    assert!(is_consequence(&leibniz, &di).unwrap().member);
    // but ⊣ is not anticommutative
    let anti = lc(b(1, x(1), x(2))).add(&lc(b(1, x(2), x(1))));
    assert!(!is_consequence(&anti, &di).unwrap().member);
}

#[test]
fn zero_identity_instance_present() {
    let ws = presets::workspace().unwrap();
    let di = replicate_identities(ws.system("as").unwrap(), Mode::Di).unwrap();
    let z = lc(md(&[1], x(1), md(&[1], x(2), x(3)))).sub(&lc(md(&[1], x(1), md(&[2], x(2), x(3)))));
    assert!(di.identities.iter().any(|i| i.lhs == z || i.lhs == z.neg()), "zero identity missing");
}

#[test]
fn di_outputs_are_singletons() {
    let ws = presets::workspace().unwrap();
    for name in ["as", "lie", "perm", "n3", "comd_axioms"] {
        let di = replicate_identities(ws.system(name).unwrap(), Mode::Di).unwrap();
        for id in &di.identities {
            for t in id.lhs.terms() {
                assert!(t.ops().iter().all(|o| o.deco.map_or(true, |h| h.is_singleton())), "{name}: {t}");
            }
        }
    }
}

#[test]
fn unflagged_unary_rejected() {
    let sig = Signature::new("u", vec![OpDecl::new("m", 2), OpDecl::new("d", 1)]).unwrap();
    let l = lc(m(Term::app("d", vec![x(1)]), x(2))).sub(&lc(m(x(2), Term::app("d", vec![x(1)]))));
    let sys = IdentitySystem::new("s", sig, vec![decotree::Identity::from_lincomb("c", l).unwrap()]).unwrap();
    assert!(matches!(replicate_identities(&sys, Mode::Tri), Err(Error::UnflaggedUnary(_))));
}

#[test]
fn replicated_commutator() {
    let ws = presets::workspace().unwrap();
    let w = replicate_morphism(ws.morphism("commutator").unwrap(), Mode::Di).unwrap();
    let img = w.image(&OpSym::decorated("br", s(&[2]))).unwrap();
    let want = lc(md(&[2], x(1), x(2))).sub(&lc(md(&[1], x(2), x(1))));
    assert_eq!(img, &want);
    for (sym, img) in &w.images {
        let plain = ws.morphism("commutator").unwrap().image(&sym.erased()).unwrap();
        assert_eq!(&erase_decorations(img), plain);
    }
    let id = Morphism::identity(&bin());
    let rid = replicate_morphism(&id, Mode::Tri).unwrap();
    for (sym, img) in &rid.images {
        assert_eq!(img, &lc(Term::App(sym.clone(), vec![x(1), x(2)])));
    }
}

fn tensor(c: &[Q], a: &[Q]) -> Vector {
    c.iter().flat_map(|ci| a.iter().map(move |aj| ci * aj)).collect()
}

fn check_evaluation(c: &FiniteAlgebra, a: &FiniteAlgebra, u: &Term, h: Subset, r: &mut impl rand::Rng) {
    let t = tensor_replicated(c, a, Mode::Tri).unwrap();
    let n = u.degree();
    let cs: Vec<Vector> = (0..n).map(|_| unit_vec(c.dim(), r.gen_range(0..c.dim()))).collect();
    let avs: Vec<Vector> = (0..n).map(|_| random_vector(a.dim(), r)).collect();
    let args: Vec<Vector> = cs.iter().zip(&avs).map(|(ci, ai)| tensor(ci, ai)).collect();
    let lhs = t.evaluate(&decorate(&lc(u.clone()), h, Mode::Tri).unwrap(), &args).unwrap();
    let ev = corolla_value(c, Corolla::new(n, h).unwrap(), &cs).unwrap();
    let rhs = tensor(&ev, &a.evaluate(&lc(u.clone()), &avs).unwrap());
    assert_eq!(lhs, rhs, "u = {u}, H = {h}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `u^H` on pure tensors in `C⊗A` is `e_H(c) ⊗ u(a)`.
    #[test]
    fn evaluation_compatibility(seed in any::<u64>(), n in 2..=4usize, dim in 1..=3usize) {
        let mut r = rng(seed);
        let sig = fg();
        let a = random_algebra("A", &sig, dim, &mut r);
        let u = random_monomial(&sig, n, &mut r);
        for h in Subset::nonempty_subsets(n as u32) {
            check_evaluation(&c2(), &a, &u, h, &mut r);
            check_evaluation(&comtrias_field(), &a, &u, h, &mut r);
        }
    }

    /// Every pair `(e_H, u)` is hit by `u^H`, and decorating then erasing is the identity.
    #[test]
    fn decoration_is_a_section(seed in any::<u64>(), n in 1..=4usize) {
        let mut r = rng(seed);
        let u = random_monomial(&fg(), n, &mut r);
        let mut images = Vec::new();
        for h in Subset::nonempty_subsets(n as u32) {
            let d = decorate_term(&u, h, Mode::Tri).unwrap();
            prop_assert_eq!(d.erase(), u.clone());
            prop_assert!(d.is_multilinear());
            images.push(d);
        }
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), (1 << n) - 1);
    }
}

#[test]
fn all_degree_three_monomials_decorate_distinctly() {
    let mut seen = std::collections::BTreeSet::new();
    for u in monomials(&bin(), 3) {
        for h in Subset::nonempty_subsets(3) {
            assert!(seen.insert(decorate_term(&u, h, Mode::Tri).unwrap()));
        }
    }
    assert_eq!(seen.len(), 12 * 7);
}
