mod common;

use irreg_core::exact::{exact_strength, Strength};
use irreg_core::graph::{generate_circulant, parse_edge_list, Graph};
use irreg_core::weighting::{
    find_collision, is_irregular, lower_bound_regular, parse_weighting, weighted_degrees, EdgeWeighting,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges = pairs.iter().zip(&mask).filter(|(_, &keep)| keep).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn weighted_graph(max_n: usize, cap: u64) -> impl Strategy<Value = (Graph, EdgeWeighting)> {
    graph_strategy(max_n).prop_flat_map(move |g| {
        let m = g.edge_count();
        proptest::collection::vec(1..=cap, m)
            .prop_map(move |w| (g.clone(), EdgeWeighting::new(w, cap).unwrap()))
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in graph_strategy(12)) {
        let text = g.to_edge_list();
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn weighting_file_round_trip((_, w) in weighted_graph(10, 6)) {
        let back = parse_weighting(&w.to_file_format()).unwrap().into_weighting().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn handshake((g, w) in weighted_graph(14, 9)) {
        let sums = weighted_degrees(&g, &w).unwrap().sums;
        let total: u64 = w.weights().iter().sum();
        prop_assert_eq!(sums.iter().sum::<u64>(), 2 * total);
        prop_assert_eq!(sums, common::naive_sums(g.vertex_count(), g.edges(), w.weights()));
    }

    #[test]
    fn single_raise_moves_two_sums((g, w) in weighted_graph(12, 5), pick in any::<prop::sample::Index>(), by in 1u64..4) {
        prop_assume!(g.edge_count() > 0);
        let e = pick.index(g.edge_count());
        let before = weighted_degrees(&g, &w).unwrap().sums;
        let mut raised = w.weights().to_vec();
        raised[e] += by;
        let after = common::naive_sums(g.vertex_count(), g.edges(), &raised);
        let (a, b) = g.endpoints(e);
        for v in 0..g.vertex_count() {
            let expect = if v == a || v == b { before[v] + by } else { before[v] };
            prop_assert_eq!(after[v], expect);
        }
    }

    #[test]
    fn relabeling_preserves_irregularity((g, w) in weighted_graph(10, 4), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = Graph::from_edges(n, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        let w2 = EdgeWeighting::new(w.weights().to_vec(), w.cap()).unwrap();
        prop_assert_eq!(is_irregular(&g, &w), is_irregular(&h, &w2));
        let sums = weighted_degrees(&g, &w).unwrap().sums;
        prop_assert_eq!(find_collision(&sums).is_none(), common::all_distinct(&sums));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn circulants_respect_the_counting_bound(n in 5usize..=9, raw in proptest::collection::btree_set(1usize..5, 1..3)) {
        let offsets: Vec<usize> = raw.into_iter().filter(|&o| 2 * o <= n).collect();
        prop_assume!(!offsets.is_empty());
        let g = generate_circulant(n, &offsets).unwrap();
        let d = g.regular_degree().unwrap();
        prop_assume!(g.edge_count() <= 18);
        let r = exact_strength(&g, 8, 50_000_000);
        if let Strength::Finite { value } = r.strength {
            prop_assert!(value >= lower_bound_regular(n as u64, d as u64));
            prop_assert!(is_irregular(&g, r.witness.as_ref().unwrap()));
        }
    }
}
