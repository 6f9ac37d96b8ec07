mod common;

use irreg_core::dense::{
    adjust_b, build_edge_pools, initial_weighting, plan_intervals, run_pipeline, sample_partition, Outcome,
    PipelineConfig, PlanOverrides, SamplingOverrides, Slack,
};
use irreg_core::graph::generate_min_degree_random;
use irreg_core::weighting::{weighted_degrees, EdgeWeighting};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn initial_sums_match_sampled_sigma(n in 20usize..80, p in 0.5f64..1.0, seed in any::<u64>(), k in 3u64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, p);
        prop_assume!(g.min_degree() > 0);
        let plan = plan_intervals(n, g.min_degree(), k, PlanOverrides { t: Some(30.0), lambda: Some(3) }).unwrap();
        let ov = SamplingOverrides { z_probability: Some(0.5), ..Default::default() };
        let state = sample_partition(&g, &plan, seed, &ov).unwrap();
        let (w0, sums) = initial_weighting(&g, &state, k);
        prop_assert_eq!(&sums.sums, &state.sigma);
        prop_assert_eq!(weighted_degrees(&g, &w0).unwrap().sums, state.sigma.clone());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let expect = if state.in_l[e] { k } else { 1 };
            prop_assert_eq!(w0.get(e), expect);
            prop_assert_eq!(state.in_m[e], state.y[u] != state.y[v] && state.z[e] == Some(true));
            prop_assert!(!(state.in_m[e] && state.in_l[e]));
        }
    }

    #[test]
    fn pools_split_induced_edges(n in 2usize..60, p in 0.05f64..1.0, q in 0.0f64..1.0, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, n, p);
        let small = common::random_subset(&mut rng, n, q);
        let pools = build_edge_pools(&g, &small);
        let bad = common::pool_violations(&g, &small, &pools);
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn phase_two_conserves_and_separates(seed in any::<u64>(), lambda in prop::sample::select(vec![3u64, 5, 7]), width in 6u64..20) {
        let inst = common::synthetic_big(seed, lambda, width, 6);
        let g = &inst.graph;
        let plan = plan_intervals(g.vertex_count(), inst.min_degree, 3, PlanOverrides { t: Some(inst.t), lambda: Some(lambda) }).unwrap();
        let w0 = EdgeWeighting::constant(g.edge_count(), 1);
        let out = adjust_b(g, &inst.state, &plan, &w0).unwrap();
        let before = weighted_degrees(g, &w0).unwrap().sums;
        let mut raised_at = vec![0u64; g.vertex_count()];
        for a in &out.assignments {
            for &e in &a.raised_edges {
                let (u, v) = g.endpoints(e);
                prop_assert!(inst.state.in_m[e]);
                prop_assert_eq!(out.weighting.get(e), 2);
                prop_assert!(inst.state.y[u] != inst.state.y[v]);
                raised_at[u] += 1;
                raised_at[v] += 1;
            }
        }
        for v in 0..g.vertex_count() {
            prop_assert_eq!(out.sums[v] - before[v], raised_at[v]);
        }
        let big: Vec<u64> = inst.state.big.iter().map(|&v| out.sums[v]).collect();
        prop_assert!(common::all_distinct(&big));
        prop_assert!(big.iter().all(|s| s % lambda >= 2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pipeline_reports_are_consistent(n in 30usize..120, seed in any::<u64>(), lambda in 3u64..8, t in 4.0f64..40.0, q in 0.05f64..0.4) {
        let g = generate_min_degree_random(n, 0.9, n * 6 / 10, seed, 1000).unwrap();
        let cfg = PipelineConfig {
            t: Some(t),
            lambda: Some(lambda),
            slack: Slack::uniform(1e6),
            max_trials: 2,
            sampling: SamplingOverrides { y_probability: Some(q), z_probability: Some(0.5), ..Default::default() },
            ..Default::default()
        };
        let a = run_pipeline(&g, 3, seed, &cfg).unwrap();
        let mut b = run_pipeline(&g, 3, seed, &cfg).unwrap();
        b.timing = a.timing.clone();
        prop_assert_eq!(&a, &b);
        match &a.outcome {
            Outcome::Success => {
                let w = a.weighting.clone().unwrap();
                let sums = common::naive_sums(n, g.edges(), &w);
                prop_assert!(common::all_distinct(&sums));
                prop_assert!(w.iter().all(|x| (1..=3).contains(x)));
            }
            _ => prop_assert!(a.weighting.is_none()),
        }
    }
}
