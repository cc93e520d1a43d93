mod common;

use common::{all_labelled, brute_aut_order, brute_canon, graph_strategy, permutations};
use lcorbit::canon::{
    are_isomorphic, automorphism_group, canonical_form, canonical_graph, is_automorphism, vertex_symmetry_classes,
};
use lcorbit::census::canonical_graphs;
use proptest::prelude::*;
use std::collections::HashSet;

#[test]
fn agrees_with_brute_force_on_all_small_graphs() {
    for n in 1..=5 {
        let perms = permutations(n);
        let mut ours = HashSet::new();
        let mut slow = HashSet::new();
        for g in all_labelled(n) {
            let c = canonical_graph(&g);
            ours.insert(c);
            slow.insert(brute_canon(&g, &perms));
            assert_eq!(automorphism_group(&g).order, brute_aut_order(&g, &perms), "{g:?}");
        }
        // Same number of isomorphism classes as the slow form.
        assert_eq!(ours.len(), slow.len(), "n = {n}");
    }
}

#[test]
fn graph_counts_match_known_sequence() {
    let counts: Vec<usize> = (1..=7).map(|n| canonical_graphs(n, false).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 11, 34, 156, 1044]);
    let connected: Vec<usize> = (1..=7).map(|n| canonical_graphs(n, true).unwrap().len()).collect();
    assert_eq!(connected, vec![1, 1, 2, 6, 21, 112, 853]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn invariant_under_relabelling(g in graph_strategy(1, 12), seed in any::<u64>()) {
        let n = g.n();
        let mut p: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            p.swap(i, (s % (i as u64 + 1)) as usize);
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        }
        let h = g.relabel(&p);
        prop_assert_eq!(canonical_graph(&g), canonical_graph(&h));
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(automorphism_group(&g).order, automorphism_group(&h).order);
    }

    #[test]
    fn form_is_reached_by_its_permutation(g in graph_strategy(1, 12)) {
        let f = canonical_form(&g);
        prop_assert_eq!(g.relabel(&f.perm), f.canon);
    }

    #[test]
    fn generators_are_automorphisms(g in graph_strategy(1, 12)) {
        for gen in automorphism_group(&g).generators {
            prop_assert!(is_automorphism(&g, &gen));
        }
    }

    #[test]
    fn trivial_group_iff_singleton_classes(g in graph_strategy(1, 9)) {
        let classes = vertex_symmetry_classes(&g);
        prop_assert_eq!(classes.len() == g.n(), automorphism_group(&g).order == 1);
    }

    #[test]
    fn group_order_matches_brute_force(g in graph_strategy(1, 7)) {
        prop_assert_eq!(automorphism_group(&g).order, brute_aut_order(&g, &permutations(g.n())));
    }
}
