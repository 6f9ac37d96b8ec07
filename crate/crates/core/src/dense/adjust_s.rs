//! Final separation of small-vertex sums on multiples of `λ`.

use serde::{Deserialize, Serialize};

use super::partition::PartitionState;
use super::plan::IntervalPlan;
use super::PhaseFailure;
use crate::graph::Graph;
use crate::weighting::{weighted_degrees_raw, EdgeWeighting};

/// Radius of the window around `σ₀(v)` inside which another small vertex may
/// end on the same final sum: `(2K+2)n/√t + 2√n`.
pub fn dangerous_radius(plan: &IntervalPlan) -> f64 {
    let n = plan.n as f64;
    (2.0 * plan.k as f64 + 2.0) * n / plan.t.sqrt() + 2.0 * n.sqrt()
}

/// For each small `v`, the other small vertices whose initial sums lie in the
/// open window of [`dangerous_radius`] around `σ₀(v)`. Empty for big vertices.
pub fn compute_dangerous(state: &PartitionState, initial_sums: &[u64], plan: &IntervalPlan) -> Vec<Vec<usize>> {
    let radius = dangerous_radius(plan);
    let mut sorted = state.small.clone();
    sorted.sort_unstable_by_key(|&v| (initial_sums[v], v));
    let mut dangerous = vec![Vec::new(); initial_sums.len()];
    let mut lo = 0;
    for (i, &v) in sorted.iter().enumerate() {
        let center = initial_sums[v] as f64;
        while (initial_sums[sorted[lo]] as f64) <= center - radius {
            lo += 1;
        }
        let mut j = lo;
        while j < sorted.len() && (initial_sums[sorted[j]] as f64) < center + radius {
            if j != i {
                dangerous[v].push(sorted[j]);
            }
            j += 1;
        }
        dangerous[v].sort_unstable();
    }
    dangerous
}

/// Processing order for the small vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderPolicy {
    #[default]
    AscendingId,
    DescendingId,
    /// Ascending initial sum, ties by id.
    AscendingInitialSum,
}

impl OrderPolicy {
    pub fn order(self, small: &[usize], initial_sums: &[u64]) -> Vec<usize> {
        let mut order = small.to_vec();
        match self {
            OrderPolicy::AscendingId => order.sort_unstable(),
            OrderPolicy::DescendingId => order.sort_unstable_by(|a, b| b.cmp(a)),
            OrderPolicy::AscendingInitialSum => order.sort_unstable_by_key(|&v| (initial_sums[v], v)),
        }
        order
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SStep {
    pub vertex: usize,
    pub pool_size: usize,
    /// Reachable sums `[range_lo, range_hi]` before the choice.
    pub range_lo: u64,
    pub range_hi: u64,
    pub target: u64,
    /// Neighbours touched through the pool, with their sums afterwards.
    pub touched: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SAdjustment {
    pub weighting: EdgeWeighting,
    pub sums: Vec<u64>,
    /// `(vertex, s_v)` in processing order.
    pub targets: Vec<(usize, u64)>,
    pub steps: Vec<SStep>,
    /// How many `{s_u, s_u + 1}` containment scans ran (one per processed vertex).
    pub containment_checks: usize,
}

/// Raises every edge inside `S` to 2, then walks `order` and moves each small
/// vertex onto a multiple `s_v` of `λ` by shifting edges of its pool by ±1,
/// never pushing an already processed neighbour `u` out of `{s_u, s_u + 1}`
/// and never reusing the target of a processed dangerous vertex.
pub fn adjust_s(
    g: &Graph,
    state: &PartitionState,
    plan: &IntervalPlan,
    current: &EdgeWeighting,
    order: &[usize],
    pools: &[Vec<usize>],
    dangerous: &[Vec<usize>],
) -> Result<SAdjustment, PhaseFailure> {
    let lambda = plan.lambda;
    if lambda < 3 {
        return Err(PhaseFailure::LambdaTooSmall { lambda });
    }
    {
        let mut a = order.to_vec();
        let mut b = state.small.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(PhaseFailure::BadOrder);
        }
    }

    let mut weights = current.weights().to_vec();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if state.y[u] && state.y[v] {
            weights[e] = 2;
        }
    }
    let mut sums = weighted_degrees_raw(g, &weights).expect("one weight per edge").sums;

    let n = g.vertex_count();
    let mut processed = vec![false; n];
    let mut target = vec![0u64; n];
    let mut targets = Vec::with_capacity(order.len());
    let mut steps = Vec::with_capacity(order.len());
    let mut done: Vec<usize> = Vec::with_capacity(order.len());
    let mut containment_checks = 0;

    for &v in order {
        // (edge, other end, min delta, max delta)
        let mut options = Vec::with_capacity(pools[v].len());
        for &e in &pools[v] {
            let u = g.opposite(e, v);
            let (lo, hi) = if !processed[u] {
                (-1i64, 1i64)
            } else if sums[u] == target[u] {
                (0, 1)
            } else if sums[u] == target[u] + 1 {
                (-1, 0)
            } else {
                return Err(PhaseFailure::ContainmentViolated {
                    vertex: u,
                    sum: sums[u],
                    target: target[u],
                });
            };
            options.push((e, u, lo, hi));
        }
        let base = sums[v] as i64;
        let range_lo = (base + options.iter().map(|o| o.2).sum::<i64>()).max(0) as u64;
        let range_hi = (base + options.iter().map(|o| o.3).sum::<i64>()) as u64;
        debug_assert!(range_hi - range_lo >= pools[v].len() as u64);

        let mut blocked: Vec<u64> = dangerous[v]
            .iter()
            .filter(|&&u| processed[u])
            .map(|&u| target[u])
            .filter(|&s| s >= range_lo && s <= range_hi)
            .collect();
        blocked.sort_unstable();
        blocked.dedup();
        let mut candidate = range_lo.div_ceil(lambda) * lambda;
        while candidate <= range_hi && blocked.binary_search(&candidate).is_ok() {
            candidate += lambda;
        }
        if candidate > range_hi {
            return Err(PhaseFailure::NoAdmissibleTarget {
                vertex: v,
                range_lo,
                range_hi,
                blocked,
            });
        }
        let s_v = candidate;

        let mut delta = s_v as i64 - base;
        let mut touched = Vec::new();
        for &(e, u, lo, hi) in &options {
            let step = if delta > 0 && hi == 1 {
                1
            } else if delta < 0 && lo == -1 {
                -1
            } else {
                continue;
            };
            delta -= step;
            weights[e] = (weights[e] as i64 + step) as u64;
            sums[v] = (sums[v] as i64 + step) as u64;
            sums[u] = (sums[u] as i64 + step) as u64;
            touched.push((u, sums[u]));
        }
        debug_assert_eq!(delta, 0);
        debug_assert_eq!(sums[v], s_v);

        processed[v] = true;
        target[v] = s_v;
        done.push(v);
        targets.push((v, s_v));
        containment_checks += 1;
        if let Some(&u) = done.iter().find(|&&u| sums[u] != target[u] && sums[u] != target[u] + 1) {
            return Err(PhaseFailure::ContainmentViolated {
                vertex: u,
                sum: sums[u],
                target: target[u],
            });
        }
        steps.push(SStep {
            vertex: v,
            pool_size: pools[v].len(),
            range_lo,
            range_hi,
            target: s_v,
            touched,
        });
    }

    let cap = plan.k.max(3);
    Ok(SAdjustment {
        weighting: EdgeWeighting::new(weights, cap).expect("small edges stay within 1..=3"),
        sums,
        targets,
        steps,
        containment_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::euler::build_edge_pools;
    use crate::dense::plan::{plan_intervals, PlanOverrides};
    use crate::graph::{generate_complete, Graph};

    fn plan(n: usize, lambda: u64) -> IntervalPlan {
        plan_intervals(
            n,
            1,
            3,
            PlanOverrides {
                t: Some(25.0),
                lambda: Some(lambda),
            },
        )
        .unwrap()
    }

    fn all_small(g: &Graph) -> PartitionState {
        let n = g.vertex_count();
        PartitionState::from_samples(g, 3, 25.0, vec![0.0; n], vec![true; n], vec![None; g.edge_count()])
    }

    #[test]
    fn dangerous_sets() {
        let g = generate_complete(4);
        let state = all_small(&g);
        let p = plan(4, 3);
        let equal = compute_dangerous(&state, &[7, 7, 7, 7], &p);
        assert_eq!(equal[0], vec![1, 2, 3]);
        let r = dangerous_radius(&p);
        let far = r.ceil() as u64 + 1;
        let split = compute_dangerous(&state, &[0, far, 0, far], &p);
        assert_eq!(split[0], vec![2]);
        assert_eq!(split[1], vec![3]);
        for v in 0..4 {
            for &u in &split[v] {
                assert!(split[u].contains(&v));
            }
        }
    }

    #[test]
    fn isolated_small_vertex_needs_a_multiple() {
        // vertex 0 small with no small neighbours; its sum is its degree 3
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let y = vec![true, false, false, false];
        let state = PartitionState::from_samples(&g, 3, 25.0, vec![0.0; 4], y, vec![Some(false); 3]);
        let pools = build_edge_pools(&g, &state.small);
        let d = vec![Vec::new(); 4];
        let w = EdgeWeighting::new(vec![1, 1, 1], 3).unwrap();
        let ok = adjust_s(&g, &state, &plan(4, 3), &w, &[0], &pools, &d).unwrap();
        assert_eq!(ok.targets, vec![(0, 3)]);
        let err = adjust_s(&g, &state, &plan(4, 5), &w, &[0], &pools, &d).unwrap_err();
        assert_eq!(
            err,
            PhaseFailure::NoAdmissibleTarget {
                vertex: 0,
                range_lo: 3,
                range_hi: 3,
                blocked: vec![]
            }
        );
    }

    /// Small star `0 - {1, 2, 3}` where leaf `i` has `leaf_pendants[i - 1]` big
    /// pendants and the centre has `centre_pendants`. Only the centre has a pool.
    fn star(centre_pendants: usize, leaf_pendants: [usize; 3]) -> (Graph, PartitionState, Vec<Vec<usize>>) {
        let mut edges = vec![(0, 1), (0, 2), (0, 3)];
        let mut next = 4;
        for _ in 0..centre_pendants {
            edges.push((0, next));
            next += 1;
        }
        for (i, &p) in leaf_pendants.iter().enumerate() {
            for _ in 0..p {
                edges.push((i + 1, next));
                next += 1;
            }
        }
        let g = Graph::from_edges(next, edges).unwrap();
        let y: Vec<bool> = (0..next).map(|v| v < 4).collect();
        let z = g
            .edges()
            .iter()
            .map(|&(u, v)| (y[u] != y[v]).then_some(false))
            .collect();
        let state = PartitionState::from_samples(&g, 3, 25.0, vec![0.0; next], y, z);
        let mut pools = vec![Vec::new(); next];
        pools[0] = vec![0, 1, 2];
        (g, state, pools)
    }

    #[test]
    fn picks_smallest_free_multiple() {
        // leaves settle on 3, 6, 9; the centre starts at 12 and reaches [12, 15]
        let (g, state, pools) = star(6, [1, 4, 7]);
        let n = g.vertex_count();
        let w = EdgeWeighting::new(vec![1; g.edge_count()], 3).unwrap();
        let none = vec![Vec::new(); n];
        let out = adjust_s(&g, &state, &plan(n, 3), &w, &[1, 2, 3, 0], &pools, &none).unwrap();
        assert_eq!(out.targets, vec![(1, 3), (2, 6), (3, 9), (0, 12)]);
        let step = &out.steps[3];
        assert_eq!((step.range_lo, step.range_hi), (12, 15));
        assert!(step.touched.is_empty());
        assert_eq!(out.sums[0], 12);
    }

    #[test]
    fn dangerous_conflict_skips_a_multiple() {
        // leaf 1 settles on 12, which the centre may not reuse
        let (g, state, pools) = star(6, [10, 1, 4]);
        let n = g.vertex_count();
        let w = EdgeWeighting::new(vec![1; g.edge_count()], 3).unwrap();
        let mut dangerous = vec![Vec::new(); n];
        dangerous[0] = vec![1];
        dangerous[1] = vec![0];
        let out = adjust_s(&g, &state, &plan(n, 3), &w, &[1, 2, 3, 0], &pools, &dangerous).unwrap();
        assert_eq!(out.targets, vec![(1, 12), (2, 3), (3, 6), (0, 15)]);
        assert_eq!(out.sums[0], 15);
        for (v, s) in [(1, 12), (2, 3), (3, 6)] {
            assert!(out.sums[v] == s || out.sums[v] == s + 1);
        }
    }
}
