#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use irreg_core::dense::PartitionState;
use irreg_core::graph::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Weighted degrees by a direct scan over the edge list.
pub fn naive_sums(n: usize, edges: &[(usize, usize)], weights: &[u64]) -> Vec<u64> {
    let mut sums = vec![0; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        sums[u] += weights[i];
        sums[v] += weights[i];
    }
    sums
}

pub fn all_distinct(values: &[u64]) -> bool {
    let mut seen = HashSet::new();
    values.iter().all(|v| seen.insert(*v))
}

/// Whether any of the `k^m` weightings from `{1..k}` is irregular.
pub fn brute_force_feasible(n: usize, edges: &[(usize, usize)], k: u64) -> bool {
    let m = edges.len();
    let mut w = vec![1u64; m];
    loop {
        if all_distinct(&naive_sums(n, edges, &w)) {
            return true;
        }
        // odometer increment
        let mut i = 0;
        while i < m && w[i] == k {
            w[i] = 1;
            i += 1;
        }
        if i == m {
            return false;
        }
        w[i] += 1;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// One representative of every connected graph on `1..=max_n` vertices, up to
/// isomorphism, as `(n, edges)`.
pub fn connected_graphs(max_n: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut canon_seen = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            if !connected(n, &edges) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<_> = edges
                        .iter()
                        .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                        .collect();
                    e.sort_unstable();
                    e
                })
                .min()
                .unwrap();
            if canon_seen.insert(canon) {
                out.push((n, edges));
            }
        }
    }
    out
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Independent check of an edge-pool split of `G[small]`; returns the list of
/// violations (empty when the pools are valid).
pub fn pool_violations(g: &Graph, small: &[usize], pools: &[Vec<usize>]) -> Vec<String> {
    let set: HashSet<usize> = small.iter().copied().collect();
    let mut bad = Vec::new();
    let mut count = vec![0usize; g.edge_count()];
    for (v, pool) in pools.iter().enumerate() {
        for &e in pool {
            count[e] += 1;
            let (a, b) = g.edges()[e];
            if a != v && b != v {
                bad.push(format!("edge {e} not incident to owner {v}"));
            }
        }
        if !pool.is_empty() && !set.contains(&v) {
            bad.push(format!("non-member {v} owns edges"));
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let inside = set.contains(&a) && set.contains(&b);
        let expected = usize::from(inside);
        if count[e] != expected {
            bad.push(format!("edge {e} pooled {} times, expected {expected}", count[e]));
        }
    }
    for &v in small {
        let d_s = g.edges().iter().filter(|&&(a, b)| (a == v && set.contains(&b)) || (b == v && set.contains(&a))).count();
        if (pools[v].len() as i64) < (d_s / 2) as i64 - 1 {
            bad.push(format!("pool of {v} has {} < floor({d_s}/2) - 1", pools[v].len()));
        }
    }
    bad
}

/// A synthetic phase-2 instance: big vertices `0..big`, each joined to the
/// first `sums[b]` pool vertices by reserved edges, with `x = 0` so that the
/// initial sum of a big vertex is its degree.
pub struct SyntheticBig {
    pub graph: Graph,
    pub state: PartitionState,
    pub big: usize,
    pub width: u64,
    pub min_degree: usize,
    pub t: f64,
}

/// Builds a synthetic instance with interval width `width` whose per-interval
/// counts never exceed the admissible values (`mod λ ∉ {0,1}`) of the next
/// interval. The grid starts at `3·width` so every big vertex has at least
/// twice the width in reserved edges.
pub fn synthetic_big(seed: u64, lambda: u64, width: u64, intervals: usize) -> SyntheticBig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = 3 * width;
    let mut sums = Vec::new();
    for j in 1..=intervals as u64 {
        let lo = delta + (j - 1) * width;
        let next = (lo + width..lo + 2 * width).filter(|v| v % lambda >= 2).count();
        let count = rng.gen_range(0..=next);
        for _ in 0..count {
            sums.push(rng.gen_range(lo..lo + width));
        }
    }
    sums.shuffle(&mut rng);
    let big = sums.len();
    let pool = *sums.iter().max().unwrap_or(&0) as usize;
    // a multiple of the width keeps n/t, and so every endpoint, an exact integer
    let n = (big + pool).div_ceil(width as usize) * width as usize;
    let mut edges = Vec::new();
    for (b, &s) in sums.iter().enumerate() {
        for p in 0..s as usize {
            edges.push((b, big + p));
        }
    }
    let graph = Graph::from_edges(n, edges).unwrap();
    let y: Vec<bool> = (0..n).map(|v| v >= big).collect();
    let z = vec![Some(true); graph.edge_count()];
    let t = n as f64 / width as f64;
    let state = PartitionState::from_samples(&graph, 3, t, vec![0.0; n], y, z);
    SyntheticBig {
        graph,
        state,
        big,
        width,
        min_degree: delta as usize,
        t,
    }
}
