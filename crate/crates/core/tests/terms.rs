mod common;

use common::*;
use decotree::enumerate::{monomial_count, monomials};
use decotree::rational::q;
use decotree::{LinComb, Perm, Term};
use proptest::prelude::*;

fn br(a: Term, b: Term) -> Term {
    Term::app("br", vec![a, b])
}

#[test]
fn graft_examples() {
    let f = |a, b| Term::app("f", vec![a, b]);
    let g = |a, b| Term::app("g", vec![a, b]);
    assert_eq!(f(x(1), x(2)).graft(&[g(x(1), x(2)), x(1)]).unwrap(), f(g(x(1), x(2)), x(3)));
    let t = g(x(2), x(1));
    assert_eq!(x(1).graft(&[t.clone()]).unwrap(), t);

    // [x2,x3]*x1 grafted with three inner terms, shifts 0, 3, 5
    let outer = m(br(x(2), x(3)), x(1));
    let inners = [br(x(2), br(x(1), x(3))), br(x(2), x(1)), m(x(1), x(2))];
    let expected = m(br(br(x(5), x(4)), m(x(6), x(7))), br(x(2), br(x(1), x(3))));
    assert_eq!(outer.graft(&inners).unwrap(), expected);
}

#[test]
fn graft_rejects_wrong_slot_count() {
    let err = m(x(1), x(2)).graft(&[x(1)]).unwrap_err();
    assert!(err.to_string().contains("2"), "{err}");
}

#[test]
fn act_examples() {
    let f = |a, b| Term::app("f", vec![a, b]);
    let g = |a, b| Term::app("g", vec![a, b]);
    let swap = Perm::from_cycles(2, &[&[1, 2]]).unwrap();
    assert_eq!(f(x(1), x(2)).act(&swap).unwrap(), f(x(2), x(1)));
    let t = f(g(x(1), x(3)), x(2));
    assert_eq!(t.act(&Perm::identity(3)).unwrap(), t);
    let c = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
    assert_eq!(t.act(&c).unwrap(), f(g(x(2), x(1)), x(3)));
    assert!(t.act(&swap).is_err());
}

#[test]
fn normalize_examples() {
    let t = m(x(1), x(2));
    let u = m(x(2), x(1));
    assert!(LinComb::from_term(t.clone()).sub(&LinComb::from_term(t.clone())).is_zero());
    let l = LinComb::normalize([(t.clone(), q(2)), (t.clone(), q(3))]);
    assert_eq!(l.len(), 1);
    assert_eq!(l.coeff(&t), q(5));
    assert_eq!(LinComb::normalize([(u, q(1)), (t, q(1))]).len(), 2);
}

#[test]
fn degree_three_monomial_count() {
    // 2 planar shapes times 3! labelings, counted independently of the enumerator
    let mut by_hand = Vec::new();
    for p in Perm::all(3) {
        let [a, b, c] = [p.apply(1), p.apply(2), p.apply(3)].map(x);
        by_hand.push(m(m(a.clone(), b.clone()), c.clone()));
        by_hand.push(m(a, m(b, c)));
    }
    by_hand.sort();
    by_hand.dedup();
    assert_eq!(by_hand.len(), 12);
    let mut listed = monomials(&bin(), 3);
    listed.sort();
    assert_eq!(listed, by_hand);
    assert_eq!(monomial_count(&bin(), 3), 12);
}

fn degrees_summing_to(total: usize, parts: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1..=2usize, parts).prop_filter("total", move |v| v.iter().sum::<usize>() <= total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graft_is_associative(seed in any::<u64>(), n in 1..=3usize, degs in degrees_summing_to(4, 3)) {
        let mut r = rng(seed);
        let sig = fg();
        let t = random_monomial(&sig, n, &mut r);
        let degs = &degs[..n];
        let us: Vec<Term> = degs.iter().map(|&d| random_monomial(&sig, d, &mut r)).collect();
        let total: usize = degs.iter().sum();
        let vs: Vec<Term> = (0..total).map(|_| random_monomial(&sig, 1 + (seed as usize % 2), &mut r)).collect();
        let left = t.graft(&us).unwrap().graft(&vs).unwrap();
        let mut blocks = Vec::new();
        let mut at = 0;
        for (u, &d) in us.iter().zip(degs) {
            blocks.push(u.graft(&vs[at..at + d]).unwrap());
            at += d;
        }
        let right = t.graft(&blocks).unwrap();
        prop_assert_eq!(left.clone(), right);
        prop_assert!(left.is_multilinear());
    }

    #[test]
    fn act_composes(seed in any::<u64>(), n in 1..=4usize) {
        let mut r = rng(seed);
        let t = random_monomial(&fg(), n, &mut r);
        let all = Perm::all(n);
        let s = &all[seed as usize % all.len()];
        let u = &all[(seed / 7) as usize % all.len()];
        prop_assert_eq!(t.act(s).unwrap().act(u).unwrap(), t.act(&u.compose(s)).unwrap());
        prop_assert_eq!(t.act(s).unwrap().act(&s.inverse()).unwrap(), t);
    }

    /// Relabeling the outer term's leaves permutes the inner blocks:
    /// `(T·σ)(U_σ(1)..)` reads the same trees as `T(U_1..U_n)` with the block
    /// permutation applied to the result's leaves.
    #[test]
    fn act_is_equivariant_over_graft(seed in any::<u64>(), n in 2..=3usize) {
        let mut r = rng(seed);
        let sig = fg();
        let t = random_monomial(&sig, n, &mut r);
        let us: Vec<Term> = (0..n).map(|i| random_monomial(&sig, 1 + (i + seed as usize) % 2, &mut r)).collect();
        let all = Perm::all(n);
        let s = &all[seed as usize % all.len()];
        // inner list reordered so slot σ(i) receives U_i
        let mut reordered = vec![Term::var(1); n];
        for (i, u) in us.iter().enumerate() {
            reordered[s.apply(i as u32 + 1) as usize - 1] = u.clone();
        }
        let lhs = t.act(s).unwrap().graft(&reordered).unwrap();
        // block permutation: the leaves of U_i move to the block of slot σ(i)
        let degs: Vec<u32> = reordered.iter().map(|u| u.degree() as u32).collect();
        let start = |slot: usize| degs[..slot].iter().sum::<u32>();
        let mut images = Vec::new();
        for (i, u) in us.iter().enumerate() {
            let from = us[..i].iter().map(|v| v.degree() as u32).sum::<u32>();
            let to = start(s.apply(i as u32 + 1) as usize - 1);
            for k in 1..=u.degree() as u32 {
                images.push((from + k, to + k));
            }
        }
        images.sort();
        let block = Perm::new(images.into_iter().map(|(_, b)| b).collect()).unwrap();
        let rhs = t.graft(&us).unwrap().act(&block).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>(), n in 1..=4usize, k in 0..8usize) {
        let mut r = rng(seed);
        let l = random_lincomb(&fg(), n, k, &mut r);
        let again = LinComb::normalize(l.iter().map(|(t, c)| (t.clone(), c.clone())));
        prop_assert_eq!(&again, &l);
        prop_assert!(l.iter().all(|(_, c)| *c != q(0)));
        let shuffled = {
            let mut v: Vec<_> = l.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
            v.reverse();
            LinComb::normalize(v)
        };
        prop_assert_eq!(shuffled, l);
    }
}
