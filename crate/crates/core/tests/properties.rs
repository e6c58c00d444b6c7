use std::collections::BTreeSet;

use linkage::aset::a_set_roots;
use linkage::oracle::{self, brute_force_a_set};
use linkage::{Engine, Exec, RootSystem, Weight, WeylElem, Q};
use proptest::prelude::*;

const TYPES: [&str; 7] = ["A1", "A2", "B2", "G2", "A1xA1", "A3", "B3"];

fn system(i: usize) -> RootSystem {
    RootSystem::from_label(TYPES[i]).unwrap()
}

fn group(rs: &RootSystem) -> Vec<WeylElem> {
    rs.enumerate_group(10_000).unwrap()
}

prop_compose! {
    fn scalar()(d in prop::sample::select(vec![1i64, 2, 3, 4]), k in -8i64..=8) -> Q {
        Q::new(k, d)
    }
}

fn weight(rank: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(scalar(), rank).prop_map(Weight::new)
}

fn system_and_weight() -> impl Strategy<Value = (usize, Weight)> {
    (0..TYPES.len()).prop_flat_map(|i| {
        let rank = system(i).rank();
        (Just(i), weight(rank))
    })
}

fn in_root_lattice(rs: &RootSystem, w: &Weight) -> bool {
    rs.weight_to_root_coords(w).iter().all(|c| c.is_integer())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 128,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn reflections_are_involutions((i, mu) in system_and_weight()) {
        let rs = system(i);
        for b in 0..rs.num_roots() {
            let once = rs.reflect_idx(b, &mu);
            prop_assert_eq!(rs.reflect_idx(b, &once), mu.clone());
            // s_b flips the sign of its own pairing
            prop_assert_eq!(rs.pairing_idx(b, &once), -rs.pairing_idx(b, &mu));
            prop_assert_eq!(&mu - &once, rs.root_weight(b).scale(rs.pairing_idx(b, &mu)));
        }
    }

    #[test]
    fn group_acts((i, mu) in system_and_weight(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let rs = system(i);
        let g = group(&rs);
        let (u, v) = (a.get(&g), b.get(&g));
        prop_assert_eq!((u * v).apply(&mu), u.apply(&v.apply(&mu)));
        prop_assert_eq!(u.inverse().apply(&u.apply(&mu)), mu.clone());
        prop_assert_eq!(rs.length(u), rs.canonical_reduced_word(u).len());
        prop_assert_eq!(rs.length(u), rs.length(&u.inverse()));
        prop_assert!(rs.bruhat_leq(&rs.identity(), u));
        prop_assert!(rs.bruhat_leq(u, &rs.longest_element()));
    }

    #[test]
    fn weights_round_trip(mu in weight(3)) {
        let back: Weight = mu.to_string().parse().unwrap();
        prop_assert_eq!(back, mu);
    }

    #[test]
    fn a_set_invariants((i, mu) in system_and_weight(), a in any::<prop::sample::Index>()) {
        let rs = system(i);
        let g = group(&rs);
        let w = a.get(&g);
        let letters = rs.canonical_reduced_word(w);
        let set = a_set_roots(&rs, letters.letters(), &mu);
        prop_assert!(set.contains(&mu));
        prop_assert!(set.len() <= 1usize << letters.len());
        prop_assert!(set.replay(&rs).is_ok());
        let orbit: BTreeSet<Weight> = g.iter().map(|x| x.apply(&mu)).collect();
        for x in set.elements() {
            prop_assert!(orbit.contains(x));
            prop_assert!(in_root_lattice(&rs, &(&mu - x)));
        }
        prop_assert_eq!(set.element_set(), brute_force_a_set(&rs, letters.letters(), &mu));
    }

    #[test]
    fn identity_a_set_is_a_point((i, mu) in system_and_weight()) {
        let rs = system(i);
        let set = a_set_roots(&rs, &[], &mu);
        prop_assert_eq!(set.element_set(), BTreeSet::from([mu]));
    }

    #[test]
    fn verdicts_are_consistent(
        (i, mu1) in system_and_weight(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
    ) {
        let rs = system(i);
        prop_assume!(rs.rank() <= 2);
        let g = group(&rs);
        let (w1, w2) = (a.get(&g), b.get(&g));
        // target in the same orbit so that both answers occur
        let mu2 = c.get(&g).apply(&mu1);
        let engine = Engine::new(&rs);
        let v = engine.hom_twisted_verma(w1, &mu1, w2, &mu2).unwrap();
        prop_assert_eq!(v.ext_all_vanish, !v.hom_nonzero);
        prop_assert_eq!(v.hom_nonzero, v.witness.is_some());
        if let Some(x) = &v.witness {
            prop_assert!(v.left_set.contains(x) && v.right_set.contains(x));
            let (l, r) = engine.explain_verma(w1, &mu1, w2, &mu2, x).unwrap();
            prop_assert!(l.is_some() && r.is_some());
        }
        let self_hom = engine.hom_twisted_verma(w1, &mu1, w1, &mu1).unwrap();
        prop_assert!(self_hom.hom_nonzero);
    }

    #[test]
    fn untwisted_matches_linkage((i, mu2) in system_and_weight(), a in any::<prop::sample::Index>()) {
        let rs = system(i);
        let g = group(&rs);
        let mu1 = a.get(&g).apply(&mu2);
        let e = rs.identity();
        let v = Engine::new(&rs).hom_twisted_verma(&e, &mu1, &e, &mu2).unwrap();
        let (expected, chain) = oracle::bgg_verma_hom(&rs, &mu1, &mu2);
        prop_assert_eq!(v.hom_nonzero, expected);
        if let Some(chain) = chain {
            prop_assert!(chain.validate(&rs).is_ok());
        }
    }
}

#[test]
fn policies_agree() {
    let rs = RootSystem::from_label("B2").unwrap();
    let grid = oracle::test_grid(2, 1);
    let seq = oracle::check_concatenation(&rs, &grid, Exec::Sequential, &oracle::reference_a_set);
    let par = oracle::check_concatenation(&rs, &grid, Exec::Parallel, &oracle::reference_a_set);
    assert_eq!(seq, par);
    assert!(seq.passed());
}
