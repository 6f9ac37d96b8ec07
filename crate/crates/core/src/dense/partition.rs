use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::plan::IntervalPlan;
use super::DenseError;
use crate::graph::Graph;

/// Replacements for the sampling distributions, used to build degenerate
/// states in tests and experiments.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SamplingOverrides {
    /// Every `x_v` set to this value instead of drawn uniformly.
    pub x_value: Option<f64>,
    /// Probability of `y_v = 1`; default `1/sqrt(t)`.
    pub y_probability: Option<f64>,
    /// Probability of `z_e = 1`; default `(2K-1)/sqrt(t)`.
    pub z_probability: Option<f64>,
}

/// One realization of the random partition: `B`/`S`, the reserved set `M`,
/// the heavy set `L`, and the derived sums and their real-valued proxies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionState {
    pub k: u64,
    pub t: f64,
    pub x: Vec<f64>,
    /// `true` puts the vertex in `S`.
    pub y: Vec<bool>,
    /// Drawn only for edges with exactly one endpoint in `S`.
    pub z: Vec<Option<bool>>,
    pub in_m: Vec<bool>,
    pub in_l: Vec<bool>,
    pub big: Vec<usize>,
    pub small: Vec<usize>,
    /// `K·d_L(v) + d_{E∖L}(v)`.
    pub sigma: Vec<u64>,
    /// The proxy `S_v`.
    pub proxy: Vec<f64>,
    pub d_m: Vec<usize>,
    pub d_s: Vec<usize>,
    pub d_l: Vec<usize>,
}

impl PartitionState {
    /// Derives `B, S, M, L`, the sums and the proxies from fixed samples.
    pub fn from_samples(
        g: &Graph,
        k: u64,
        t: f64,
        x: Vec<f64>,
        y: Vec<bool>,
        z: Vec<Option<bool>>,
    ) -> Self {
        let n = g.vertex_count();
        let m = g.edge_count();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        assert_eq!(z.len(), m);
        let mut in_m = vec![false; m];
        let mut in_l = vec![false; m];
        let mut d_m = vec![0; n];
        let mut d_s = vec![0; n];
        let mut d_l = vec![0; n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let small_ends = y[u] as u8 + y[v] as u8;
            in_m[e] = small_ends == 1 && z[e] == Some(true);
            in_l[e] = x[u] + x[v] >= 1.0 && small_ends <= 1 && !in_m[e];
            for (a, b) in [(u, v), (v, u)] {
                d_m[a] += in_m[e] as usize;
                d_l[a] += in_l[e] as usize;
                d_s[a] += y[b] as usize;
            }
        }
        let big = (0..n).filter(|&v| !y[v]).collect();
        let small = (0..n).filter(|&v| y[v]).collect();
        let sigma = (0..n)
            .map(|v| k * d_l[v] as u64 + (g.degree(v) - d_l[v]) as u64)
            .collect();
        let kf = k as f64;
        let proxy = (0..n)
            .map(|v| {
                let d = g.degree(v) as f64;
                let yv = y[v] as u8 as f64;
                d + (kf - 1.0)
                    * x[v]
                    * d
                    * (1.0 - 2.0 * kf * yv / t.sqrt() + (2.0 * kf - 1.0) * (2.0 * yv - 1.0) / t)
            })
            .collect();
        PartitionState {
            k,
            t,
            x,
            y,
            z,
            in_m,
            in_l,
            big,
            small,
            sigma,
            proxy,
            d_m,
            d_s,
            d_l,
        }
    }

    pub fn is_small(&self, v: usize) -> bool {
        self.y[v]
    }
}

/// Seed of trial `index` in a rejection-sampling run: `seed + index`
/// (wrapping). Each trial seed is expanded into a ChaCha8 stream by
/// `SeedableRng::seed_from_u64`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}

/// Draws one partition. Draw order: `x_v` for all vertices, then `y_v`, then
/// `z_e` for eligible edges in index order.
pub fn sample_partition(
    g: &Graph,
    plan: &IntervalPlan,
    seed: u64,
    overrides: &SamplingOverrides,
) -> Result<PartitionState, DenseError> {
    let sqrt_t = plan.t.sqrt();
    let py = overrides.y_probability.unwrap_or(1.0 / sqrt_t);
    let pz = overrides
        .z_probability
        .unwrap_or((2.0 * plan.k as f64 - 1.0) / sqrt_t);
    for p in [py, pz] {
        if !(0.0..=1.0).contains(&p) {
            return Err(DenseError::ProbabilityOutOfRange(p));
        }
    }
    if let Some(x) = overrides.x_value {
        if !(0.0..=1.0).contains(&x) {
            return Err(DenseError::ProbabilityOutOfRange(x));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let x: Vec<f64> = match overrides.x_value {
        Some(value) => vec![value; n],
        None => (0..n).map(|_| rng.gen::<f64>()).collect(),
    };
    let y: Vec<bool> = (0..n).map(|_| rng.gen_bool(py)).collect();
    let z = g
        .edges()
        .iter()
        .map(|&(u, v)| (y[u] != y[v]).then(|| rng.gen_bool(pz)))
        .collect();
    Ok(PartitionState::from_samples(g, plan.k, plan.t, x, y, z))
}
