//! Concentration bounds for binomial sums, used as diagnostics for how far a
//! given `n` is from the regime where the random partition provably works.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChernoffError {
    #[error("probability {0} outside (0, 1)")]
    BadProbability(f64),
    #[error("deviation {dev} outside [0, np = {mean}]")]
    BadDeviation { dev: f64, mean: f64 },
}

/// Upper and lower tail bounds `(e^{-dev²/(3np)}, e^{-dev²/(2np)})` for a
/// sum of `n` Bernoulli(`p`) variables, valid for `0 ≤ dev ≤ np`.
pub fn chernoff_one_sided(n: u64, p: f64, dev: f64) -> Result<(f64, f64), ChernoffError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(ChernoffError::BadProbability(p));
    }
    let mean = n as f64 * p;
    if !(0.0..=mean).contains(&dev) {
        return Err(ChernoffError::BadDeviation { dev, mean });
    }
    let sq = dev * dev;
    Ok(((-sq / (3.0 * mean)).exp(), (-sq / (2.0 * mean)).exp()))
}

/// Two-sided bound `2e^{-dev²/(3·max(np, dev))}`, capped at 1.
pub fn chernoff_two_sided(n: u64, p: f64, dev: f64) -> f64 {
    let scale = (n as f64 * p).max(dev);
    if scale <= 0.0 {
        return 1.0;
    }
    (2.0 * (-dev * dev / (3.0 * scale)).exp()).min(1.0)
}

/// Union bound on the failure probability of the random partition:
/// `n` vertex events, `Kt` big- and `Kt` small-interval events for each
/// of the `n` terms, and three more per-vertex families, each `n⁻²`.
pub fn union_bound_diagnostic(n: u64, k: u64, t: f64) -> f64 {
    let n = n as f64;
    let kt = k as f64 * t;
    let each = n.powi(-2);
    n * each + n * kt * each + n * kt * each + n * each + n * each + n * each
}
