use std::collections::BTreeSet;

use loopflag::affine::{
    classify_parabolic, graded_component, graded_component_closed_form, Crossing, ParabolicClass,
};
use loopflag::autgrp::{act_on_crossing, automorphism_group, standardizable};
use loopflag::degcalc::{
    affine_node_constants, charges, formal_degree, hecke_degree_action, instanton_dimension,
    levi_constants, MultiDegree,
};
use loopflag::rootsys::{
    positive_roots_by_reflection, positive_roots_by_saturation, Family, RootSystem,
};
use loopflag::weyl::{AffineRoot, AffineWeyl};
use loopflag::{qi, Q};
use num_traits::One;
use proptest::prelude::*;

fn system() -> impl Strategy<Value = RootSystem> {
    prop_oneof![
        (1usize..=8).prop_map(|r| (Family::A, r)),
        (2usize..=8).prop_map(|r| (Family::B, r)),
        (2usize..=8).prop_map(|r| (Family::C, r)),
        (4usize..=8).prop_map(|r| (Family::D, r)),
    ]
    .prop_map(|(f, r)| RootSystem::build(f, r).unwrap())
}

fn small_system() -> impl Strategy<Value = RootSystem> {
    prop_oneof![
        (1usize..=4).prop_map(|r| (Family::A, r)),
        (2usize..=4).prop_map(|r| (Family::B, r)),
        (2usize..=4).prop_map(|r| (Family::C, r)),
        (4usize..=5).prop_map(|r| (Family::D, r)),
    ]
    .prop_map(|(f, r)| RootSystem::build(f, r).unwrap())
}

fn with_crossing(
    s: impl Strategy<Value = RootSystem>,
) -> impl Strategy<Value = (RootSystem, Crossing)> {
    s.prop_flat_map(|rs| {
        let r = rs.rank();
        (
            Just(rs),
            proptest::collection::vec(any::<bool>(), r + 1).prop_map(Crossing::new),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strange_identity_holds(rs in system()) {
        prop_assert_eq!(rs.strange_identity(), Q::one());
    }

    #[test]
    fn root_enumerations_agree(rs in system()) {
        let a = positive_roots_by_saturation(rs.cartan_matrix());
        let b = positive_roots_by_reflection(rs.cartan_matrix());
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(rs.positive_roots(), &a[..]);
    }

    #[test]
    fn dual_coxeter_from_affine_node(rs in system()) {
        let (_, n0) = affine_node_constants(&rs);
        prop_assert_eq!(Q::one() + n0, qi(rs.dual_coxeter()));
        let theta = rs.theta_ambient();
        prop_assert_eq!(rs.killing_pair(&theta, &theta).unwrap().recip(), qi(rs.dual_coxeter()));
    }

    #[test]
    fn instanton_degree_matches(rs in system(), k in 0i64..=10) {
        let c = Crossing::only_affine_node(rs.rank());
        let m = MultiDegree::new(&c, vec![k]).unwrap();
        prop_assert_eq!(formal_degree(&rs, &c, &m).unwrap(), instanton_dimension(&rs, k as u64));
    }

    #[test]
    fn levi_constants_nonnegative((rs, c) in with_crossing(small_system())) {
        let d0: Vec<usize> = c.uncrossed_nodes().into_iter().filter(|&i| i > 0).collect();
        let l = levi_constants(&rs, &d0).unwrap();
        for v in l.n.values() {
            prop_assert!(*v >= qi(0));
        }
        for (j, big) in &l.big_n {
            let sum: Q = l.n.iter().filter(|((_, jj), _)| jj == j).map(|(_, v)| v.clone()).sum();
            prop_assert_eq!(big, &sum);
        }
    }

    #[test]
    fn closed_form_matches_brute_force((rs, c) in with_crossing(small_system()), n in -4i64..=3) {
        let p = classify_parabolic(&c, &rs).unwrap();
        prop_assert_eq!(graded_component(&p, &rs, n), graded_component_closed_form(&p, &rs, n));
    }

    #[test]
    fn automorphisms_preserve_crossing_class((rs, c) in with_crossing(small_system())) {
        let before = classify_parabolic(&c, &rs).unwrap().klass;
        for s in automorphism_group(&rs) {
            let img = act_on_crossing(&s, &c).unwrap();
            prop_assert_eq!(img.crossed_nodes().len(), c.crossed_nodes().len());
            let after = classify_parabolic(&img, &rs).unwrap().klass;
            prop_assert_eq!(before == ParabolicClass::Improper, after == ParabolicClass::Improper);
        }
        if !c.is_improper() {
            if let Some(s) = standardizable(&rs, &c).unwrap() {
                prop_assert!(act_on_crossing(&s, &c).unwrap().is_crossed(0));
            }
        }
    }

    #[test]
    fn charges_structure(k in -20i64..20, j in proptest::collection::vec(-5i64..5, 0..6)) {
        let out = charges(k, &j);
        prop_assert_eq!(out.len(), j.len() + 1);
        prop_assert_eq!(*out.last().unwrap(), k);
        prop_assert_eq!(out[0] - k, j.first().copied().unwrap_or(0));
        for i in 1..j.len() {
            prop_assert_eq!(out[i] - out[i - 1], j[i]);
        }
    }

    #[test]
    fn hecke_degree_cyclic(k in proptest::collection::vec(-9i64..9, 2..7)) {
        let n = k.len();
        let mut x = k.clone();
        for _ in 0..n {
            x = hecke_degree_action(n, &x).unwrap();
        }
        prop_assert_eq!(&x, &k);
        let fixed = hecke_degree_action(n, &k).unwrap() == k;
        prop_assert_eq!(fixed, k.iter().all(|&v| v == k[0]));
    }

    #[test]
    fn weyl_words_act_consistently(word in proptest::collection::vec(0usize..3, 0..9)) {
        let rs = RootSystem::build(Family::C, 2).unwrap();
        let g = AffineWeyl::new(&rs);
        let w = g.from_word(&word).unwrap();
        let wi = g.inverse(&w);
        prop_assert!(g.multiply(&w, &wi).is_identity());
        prop_assert_eq!(g.length(&w), g.length(&wi));
        prop_assert!(g.length(&w) <= word.len());
        prop_assert_eq!(g.length(&w) % 2, word.len() % 2);
        for r in g.inversion_set(&w) {
            prop_assert!(r.is_positive());
            prop_assert!(g.act(&w, &r).is_negative());
        }
        for (i, gen) in g.generators().iter().enumerate() {
            let ws = g.multiply(&w, gen);
            let longer = g.act(&w, &g.simple_root(i)).is_positive();
            prop_assert_eq!(g.length(&ws), if longer { g.length(&w) + 1 } else { g.length(&w) - 1 });
        }
    }
}

#[test]
fn inversion_sets_of_hasse_elements_lie_in_unipotent_radical() {
    for (f, r) in [(Family::A, 2), (Family::C, 2)] {
        let rs = RootSystem::build(f, r).unwrap();
        let g = AffineWeyl::new(&rs);
        for c in Crossing::all(r).filter(|c| !c.is_improper()) {
            for w in g.hasse_elements(&c, 5).unwrap() {
                let inv = g.inversion_set(&w.element);
                assert!(
                    inv.iter().all(|b| g.in_unipotent_radical(b, &c)),
                    "{f}{r} {c} {:?}",
                    w.word
                );
            }
        }
    }
}

#[test]
fn affine_root_positivity() {
    assert!(AffineRoot::new(1, vec![-1, -1]).is_positive());
    assert!(AffineRoot::new(0, vec![0, 1]).is_positive());
    assert!(AffineRoot::new(0, vec![-1, 0]).is_negative());
    let all: BTreeSet<_> = [AffineRoot::new(0, vec![1]), AffineRoot::new(-1, vec![1])]
        .into_iter()
        .collect();
    assert_eq!(all.iter().filter(|r| r.is_positive()).count(), 1);
}
