//! Exact irregularity strength for small graphs, plus a randomized local
//! search for graphs beyond exhaustive reach.
//!
//! The exact search is a depth-first backtracking over edge weights. Edges are
//! ordered so that vertices become *complete* (all incident edges weighted) as
//! early as possible, and a branch is cut the moment two complete vertices
//! share a sum. Values are tried in ascending order, so the witness for a
//! given `k` is the lexicographically first one in that edge order.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{check_goodness, Graph};
use crate::weighting::{find_collision, lower_bound_regular, weighted_degrees_raw, EdgeWeighting};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("graph is not good ({isolated_edges} isolated edges, {isolated_vertices} isolated vertices)")]
    NotGood {
        isolated_edges: usize,
        isolated_vertices: usize,
    },
    #[error("cap k must be at least 1")]
    ZeroCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(EdgeWeighting),
    /// The whole search space was exhausted: no irregular k-weighting exists.
    None,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

/// Edge order that completes one vertex at a time along a BFS order, and for
/// each position the vertices whose last incident edge sits there.
fn completion_order(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let m = g.edge_count();
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for v in g.bfs_order() {
        for inc in g.neighbors(v) {
            if !placed[inc.edge] {
                placed[inc.edge] = true;
                order.push(inc.edge);
            }
        }
    }
    let mut last_pos = vec![None; g.vertex_count()];
    for (pos, &e) in order.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        last_pos[u] = Some(pos);
        last_pos[v] = Some(pos);
    }
    let mut completes = vec![Vec::new(); m];
    for (v, p) in last_pos.iter().enumerate() {
        if let Some(p) = *p {
            completes[p].push(v);
        }
    }
    (order, completes)
}

/// Searches for an irregular `k`-weighting of a good graph.
pub fn find_weighting(g: &Graph, k: u64, node_budget: u64) -> Result<SearchResult, ExactError> {
    let good = check_goodness(g);
    if !good.is_good {
        return Err(ExactError::NotGood {
            isolated_edges: good.isolated_edges,
            isolated_vertices: good.isolated_vertices,
        });
    }
    if k == 0 {
        return Err(ExactError::ZeroCap);
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(SearchResult {
            outcome: SearchOutcome::Found(EdgeWeighting::new(Vec::new(), k).expect("k >= 1")),
            nodes: 0,
        });
    }

    let (order, completes) = completion_order(g);
    let max_sum = k as usize * g.max_degree();
    let mut used = vec![false; max_sum + 1];
    // an isolated vertex is complete from the start with sum 0
    if g.degrees().contains(&0) {
        used[0] = true;
    }
    let mut sums = vec![0u64; g.vertex_count()];
    let mut values = vec![0u64; m];
    let mut marked = vec![0usize; m];
    let mut nodes = 0u64;
    let mut pos = 0usize;

    loop {
        if pos == m {
            let mut weights = vec![0; m];
            for (p, &e) in order.iter().enumerate() {
                weights[e] = values[p];
            }
            let w = EdgeWeighting::new(weights, k).expect("search assigns 1..=k");
            return Ok(SearchResult {
                outcome: SearchOutcome::Found(w),
                nodes,
            });
        }
        let (a, b) = g.endpoints(order[pos]);
        if values[pos] > 0 {
            for &c in &completes[pos][..marked[pos]] {
                used[sums[c] as usize] = false;
            }
            sums[a] -= values[pos];
            sums[b] -= values[pos];
        }
        if values[pos] == k {
            values[pos] = 0;
            if pos == 0 {
                return Ok(SearchResult {
                    outcome: SearchOutcome::None,
                    nodes,
                });
            }
            pos -= 1;
            continue;
        }
        if nodes >= node_budget {
            return Ok(SearchResult {
                outcome: SearchOutcome::BudgetExhausted,
                nodes,
            });
        }
        nodes += 1;
        values[pos] += 1;
        sums[a] += values[pos];
        sums[b] += values[pos];
        marked[pos] = 0;
        let mut clash = false;
        for &c in &completes[pos] {
            let s = sums[c] as usize;
            if used[s] {
                clash = true;
                break;
            }
            used[s] = true;
            marked[pos] += 1;
        }
        if !clash {
            pos += 1;
        }
    }
}

/// Irregularity strength, or why it could not be pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strength {
    Finite { value: u64 },
    /// The graph is not good.
    Infinite,
    /// Every cap up to `k_max` was refuted.
    AboveCap { k_max: u64 },
    /// The node budget ran out while deciding cap `k`.
    BudgetExhausted { k: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub strength: Strength,
    pub witness: Option<EdgeWeighting>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Smallest `k <= k_max` admitting an irregular `k`-weighting. Regular graphs
/// start the scan at the counting lower bound; the budget applies per cap.
pub fn exact_strength(g: &Graph, k_max: u64, node_budget: u64) -> ExactResult {
    let start = Instant::now();
    if !check_goodness(g).is_good {
        return ExactResult {
            strength: Strength::Infinite,
            witness: None,
            nodes_explored: 0,
            elapsed: start.elapsed(),
        };
    }
    let first = match g.regular_degree() {
        Some(d) if d >= 1 => lower_bound_regular(g.vertex_count() as u64, d as u64),
        _ => 1,
    };
    let mut nodes_explored = 0;
    for k in first..=k_max {
        let result = find_weighting(g, k, node_budget).expect("good graph, k >= 1");
        nodes_explored += result.nodes;
        match result.outcome {
            SearchOutcome::Found(w) => {
                return ExactResult {
                    strength: Strength::Finite { value: k },
                    witness: Some(w),
                    nodes_explored,
                    elapsed: start.elapsed(),
                }
            }
            SearchOutcome::None => {}
            SearchOutcome::BudgetExhausted => {
                return ExactResult {
                    strength: Strength::BudgetExhausted { k },
                    witness: None,
                    nodes_explored,
                    elapsed: start.elapsed(),
                }
            }
        }
    }
    ExactResult {
        strength: Strength::AboveCap { k_max },
        witness: None,
        nodes_explored,
        elapsed: start.elapsed(),
    }
}

fn collision_pairs(sums: &[u64]) -> usize {
    let mut sorted = sums.to_vec();
    sorted.sort_unstable();
    let mut pairs = 0;
    let mut run = 1;
    for i in 1..=sorted.len() {
        if i < sorted.len() && sorted[i] == sorted[i - 1] {
            run += 1;
        } else {
            pairs += run * (run - 1) / 2;
            run = 1;
        }
    }
    pairs
}

/// Randomized local search for an irregular `k`-weighting.
///
/// Each restart draws uniform weights and then repeatedly re-weights a random
/// edge at a random clashing vertex, keeping moves that do not increase the
/// number of clashing pairs. Any result is re-verified before it is returned.
pub fn random_greedy(g: &Graph, k: u64, seed: u64, restarts: usize) -> Option<EdgeWeighting> {
    if k == 0 {
        return None;
    }
    let m = g.edge_count();
    if m == 0 {
        let w = EdgeWeighting::new(Vec::new(), k).expect("k > 0");
        return crate::weighting::is_irregular(g, &w).then_some(w);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = 50 * m + 100;
    for _ in 0..restarts {
        let mut weights: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=k)).collect();
        let mut sums = weighted_degrees_raw(g, &weights).expect("lengths match").sums;
        let mut score = collision_pairs(&sums);
        for _ in 0..steps {
            if score == 0 {
                break;
            }
            let Some((a, b, _)) = find_collision(&sums) else {
                break;
            };
            let v = if rng.gen_bool(0.5) { a } else { b };
            let Some(inc) = g.neighbors(v).choose(&mut rng) else {
                continue;
            };
            let e = inc.edge;
            let old = weights[e];
            let new = rng.gen_range(1..=k);
            if new == old {
                continue;
            }
            let (x, y) = g.endpoints(e);
            sums[x] = sums[x] + new - old;
            sums[y] = sums[y] + new - old;
            let candidate = collision_pairs(&sums);
            if candidate <= score {
                weights[e] = new;
                score = candidate;
            } else {
                sums[x] = sums[x] + old - new;
                sums[y] = sums[y] + old - new;
            }
        }
        if score == 0 {
            let w = EdgeWeighting::new(weights, k).expect("weights drawn from 1..=k");
            if crate::weighting::is_irregular(g, &w) {
                return Some(w);
            }
        }
    }
    None
}
