//! Edge weightings, weighted degrees, the irregularity verifier and the
//! closed-form bounds on irregularity strength.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("weighting has {found} entries, graph has {expected} edges")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cap must be at least 1")]
    ZeroCap,
    #[error("edge {edge} has weight {weight} outside 1..={cap}")]
    OutOfRange { edge: usize, weight: u64, cap: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Integer weights `1..=cap`, one per edge index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWeighting {
    weights: Vec<u64>,
    cap: u64,
}

impl EdgeWeighting {
    pub fn new(weights: Vec<u64>, cap: u64) -> Result<Self, WeightError> {
        if cap == 0 {
            return Err(WeightError::ZeroCap);
        }
        if let Some((edge, &weight)) = weights.iter().enumerate().find(|(_, &w)| w == 0 || w > cap) {
            return Err(WeightError::OutOfRange { edge, weight, cap });
        }
        Ok(EdgeWeighting { weights, cap })
    }

    /// Every edge weighted `value`; the cap is `value`.
    pub fn constant(m: usize, value: u64) -> Self {
        assert!(value >= 1);
        EdgeWeighting {
            weights: vec![value; m],
            cap: value,
        }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn get(&self, e: usize) -> u64 {
        self.weights[e]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sorted distinct weight values actually used.
    pub fn alphabet(&self) -> Vec<u64> {
        let mut values = self.weights.clone();
        values.sort_unstable();
        values.dedup();
        values
    }

    /// Serializes to the weighting file format (`m k`, then one weight per line).
    pub fn to_file_format(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.weights.len(), self.cap);
        for w in &self.weights {
            let _ = writeln!(out, "{w}");
        }
        out
    }
}

/// Raw contents of a weighting file, before the cap is enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFile {
    pub cap: u64,
    pub weights: Vec<u64>,
}

impl WeightFile {
    pub fn into_weighting(self) -> Result<EdgeWeighting, WeightError> {
        EdgeWeighting::new(self.weights, self.cap)
    }
}

/// Reads `m k` followed by `m` non-negative integers. Range checks against the
/// cap are left to [`WeightFile::into_weighting`] so a verifier can report them.
pub fn parse_weighting(text: &str) -> Result<WeightFile, WeightError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: &str| WeightError::Parse {
        line,
        message: message.to_string(),
    };
    let (line, header) = lines.next().ok_or_else(|| err(0, "missing header \"m k\""))?;
    let mut it = header.split_whitespace();
    let (m, cap) = match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => (
            a.parse::<usize>().map_err(|_| err(line, "bad edge count"))?,
            b.parse::<u64>().map_err(|_| err(line, "bad cap"))?,
        ),
        _ => return Err(err(line, "expected header \"m k\"")),
    };
    let mut weights = Vec::with_capacity(m);
    let mut last = line;
    for (line, body) in lines {
        last = line;
        if weights.len() == m {
            return Err(err(line, &format!("more than {m} weights")));
        }
        weights.push(body.parse::<u64>().map_err(|_| err(line, "bad weight"))?);
    }
    if weights.len() != m {
        return Err(err(last, &format!("expected {m} weights, found {}", weights.len())));
    }
    Ok(WeightFile { cap, weights })
}

/// Weighted degree of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDegrees {
    pub sums: Vec<u64>,
}

pub fn weighted_degrees(g: &Graph, w: &EdgeWeighting) -> Result<WeightedDegrees, WeightError> {
    weighted_degrees_raw(g, w.weights())
}

/// Same as [`weighted_degrees`] on a bare weight slice.
pub fn weighted_degrees_raw(g: &Graph, weights: &[u64]) -> Result<WeightedDegrees, WeightError> {
    if weights.len() != g.edge_count() {
        return Err(WeightError::LengthMismatch {
            expected: g.edge_count(),
            found: weights.len(),
        });
    }
    let mut sums = vec![0u64; g.vertex_count()];
    for (&(u, v), &w) in g.edges().iter().zip(weights) {
        sums[u] += w;
        sums[v] += w;
    }
    Ok(WeightedDegrees { sums })
}

/// First pair of vertices (by sorted sum, then id) sharing a weighted degree.
pub fn find_collision(sums: &[u64]) -> Option<(usize, usize, u64)> {
    let mut order: Vec<usize> = (0..sums.len()).collect();
    order.sort_unstable_by_key(|&v| (sums[v], v));
    order
        .windows(2)
        .find(|p| sums[p[0]] == sums[p[1]])
        .map(|p| (p[0], p[1], sums[p[0]]))
}

/// True iff all weighted degrees are pairwise distinct. A length mismatch is
/// never irregular.
pub fn is_irregular(g: &Graph, w: &EdgeWeighting) -> bool {
    weighted_degrees(g, w).is_ok_and(|d| find_collision(&d.sums).is_none())
}

/// Counting lower bound for a `d`-regular graph on `n` vertices:
/// the least integer at least `(n + d - 1) / d`.
pub fn lower_bound_regular(n: u64, d: u64) -> u64 {
    assert!(d >= 1, "degree must be positive");
    (n + d - 1).div_ceil(d)
}

/// The `6 * ceil(n / δ)` upper bound valid for every good graph with δ ≥ 1.
pub fn kkp_upper_bound(n: u64, min_degree: u64) -> u64 {
    assert!(min_degree >= 1, "minimum degree must be positive");
    6 * n.div_ceil(min_degree)
}

/// The scale parameter `t = (n / ln n)^(1/3)`.
pub fn formula_t(n: u64) -> f64 {
    let n = n as f64;
    (n / n.ln()).cbrt()
}

/// Minimum-degree threshold `n/(K-1) + 29Kn/sqrt(t)` above which the dense
/// construction is guaranteed (for large enough n). Returned unrounded.
pub fn delta_threshold(k: u64, n: u64) -> f64 {
    let t = formula_t(n);
    let (k, n) = (k as f64, n as f64);
    n / (k - 1.0) + 29.0 * k * n / t.sqrt()
}
