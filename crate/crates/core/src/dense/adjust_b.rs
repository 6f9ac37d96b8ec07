//! Initial weighting and the greedy separation of big-vertex sums.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::partition::PartitionState;
use super::plan::IntervalPlan;
use super::PhaseFailure;
use crate::graph::Graph;
use crate::weighting::{weighted_degrees, EdgeWeighting, WeightedDegrees};

/// `K` on `L`, `1` elsewhere, together with the resulting sums.
pub fn initial_weighting(g: &Graph, state: &PartitionState, k: u64) -> (EdgeWeighting, WeightedDegrees) {
    let weights = state.in_l.iter().map(|&l| if l { k } else { 1 }).collect();
    let w = EdgeWeighting::new(weights, k).expect("k >= 1");
    let sums = weighted_degrees(g, &w).expect("one weight per edge");
    (w, sums)
}

/// Whether `value` avoids the residues reserved for small vertices.
pub fn is_big_residue(value: u64, lambda: u64) -> bool {
    value % lambda >= 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BAssignment {
    pub vertex: usize,
    pub initial_sum: u64,
    /// `j` with the initial sum in `I_j`; the target lies in `I_{j+1}`.
    pub interval: usize,
    pub target: u64,
    /// Reserved edges raised from 1 to 2, ascending by index.
    pub raised_edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BAdjustment {
    pub weighting: EdgeWeighting,
    pub sums: Vec<u64>,
    pub assignments: Vec<BAssignment>,
}

/// Moves every big vertex from its interval `I_j` to the smallest free value
/// of `I_{j+1}` that is not `0` or `1` mod `λ`, processing intervals from the
/// top down and vertices within an interval by ascending `(σ₀, id)`. Each unit
/// of increase raises one reserved edge at the vertex from 1 to 2.
pub fn adjust_b(
    g: &Graph,
    state: &PartitionState,
    plan: &IntervalPlan,
    initial: &EdgeWeighting,
) -> Result<BAdjustment, PhaseFailure> {
    let lambda = plan.lambda;
    if lambda < 3 {
        return Err(PhaseFailure::LambdaTooSmall { lambda });
    }
    let sigma0 = weighted_degrees(g, initial).expect("one weight per edge").sums;

    let mut by_interval: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &state.big {
        match plan.interval_of(sigma0[v] as f64) {
            Some(j) if j < plan.interval_count => by_interval.entry(j).or_default().push(v),
            _ => {
                return Err(PhaseFailure::SumOutsideIntervals {
                    vertex: v,
                    sum: sigma0[v],
                })
            }
        }
    }

    let mut weights = initial.weights().to_vec();
    let mut sums = sigma0.clone();
    let mut assignments = Vec::with_capacity(state.big.len());
    for (&j, members) in by_interval.iter_mut().rev() {
        members.sort_unstable_by_key(|&v| (sigma0[v], v));
        let slots = plan.integers_in(j + 1);
        let mut next = slots.start;
        for &v in members.iter() {
            next = next.max(sigma0[v] + 1);
            while next < slots.end && !is_big_residue(next, lambda) {
                next += 1;
            }
            if next >= slots.end {
                return Err(PhaseFailure::IntervalOverflow { vertex: v, interval: j });
            }
            let target = next;
            next += 1;

            let needed = (target - sigma0[v]) as usize;
            let reserved: Vec<usize> = g
                .neighbors(v)
                .iter()
                .map(|inc| inc.edge)
                .filter(|&e| state.in_m[e])
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            if needed > reserved.len() {
                return Err(PhaseFailure::InsufficientMEdges {
                    vertex: v,
                    interval: j,
                    needed,
                    available: reserved.len(),
                });
            }
            let raised: Vec<usize> = reserved.into_iter().take(needed).collect();
            for &e in &raised {
                debug_assert_eq!(weights[e], 1);
                weights[e] = 2;
                let (a, b) = g.endpoints(e);
                sums[a] += 1;
                sums[b] += 1;
            }
            assignments.push(BAssignment {
                vertex: v,
                initial_sum: sigma0[v],
                interval: j,
                target,
                raised_edges: raised,
            });
        }
    }
    let cap = plan.k.max(2);
    Ok(BAdjustment {
        weighting: EdgeWeighting::new(weights, cap).expect("weights stay within 1..=K"),
        sums,
        assignments,
    })
}
