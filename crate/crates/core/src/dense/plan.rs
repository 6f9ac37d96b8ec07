use serde::{Deserialize, Serialize};

use super::DenseError;
use crate::weighting::{delta_threshold, formula_t};

/// Explicit values replacing the asymptotic formulas.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PlanOverrides {
    pub t: Option<f64>,
    pub lambda: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanMode {
    Formula,
    Override,
}

/// The interval grid `i_j = δ + j·n/t`, `j = 0..=interval_count`, with
/// half-open intervals `I_j = [i_{j-1}, i_j)` and their widened copies
/// `I'_j = [i_{j-1} - margin, i_j + margin)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalPlan {
    pub k: u64,
    pub n: usize,
    pub min_degree: usize,
    pub t: f64,
    pub lambda: u64,
    /// `ceil(K·t)`.
    pub interval_count: usize,
    /// `n / t`.
    pub width: f64,
    /// `3Kn / (t·sqrt(t))`.
    pub margin: f64,
    pub mode: PlanMode,
    pub delta_threshold: f64,
    pub meets_delta_threshold: bool,
    /// The threshold exceeds `n`, so no graph on `n` vertices can meet it.
    pub threshold_vacuous: bool,
    pub lambda_ok: bool,
}

impl IntervalPlan {
    /// `i_j`.
    pub fn endpoint(&self, j: usize) -> f64 {
        self.min_degree as f64 + j as f64 * self.width
    }

    /// The `j` in `1..=interval_count` with `value ∈ I_j`.
    pub fn interval_of(&self, value: f64) -> Option<usize> {
        if value < self.endpoint(0) || value >= self.endpoint(self.interval_count) {
            return None;
        }
        let guess = ((value - self.min_degree as f64) / self.width).floor() as usize + 1;
        // settle rounding at the boundaries against the endpoints themselves
        let mut j = guess.max(1);
        while j > 1 && value < self.endpoint(j - 1) {
            j -= 1;
        }
        while value >= self.endpoint(j) {
            j += 1;
        }
        Some(j)
    }

    /// Whether `value ∈ I'_j`.
    pub fn widened_contains(&self, j: usize, value: f64) -> bool {
        value >= self.endpoint(j - 1) - self.margin && value < self.endpoint(j) + self.margin
    }

    /// Integers of `I_j`, as `lo..hi`.
    pub fn integers_in(&self, j: usize) -> std::ops::Range<u64> {
        let lo = self.endpoint(j - 1).ceil().max(0.0) as u64;
        let hi = self.endpoint(j).ceil().max(0.0) as u64;
        lo..hi
    }

    pub fn sqrt_t(&self) -> f64 {
        self.t.sqrt()
    }
}

/// Builds the interval plan, using `t = (n/ln n)^(1/3)` and
/// `λ = floor(sqrt(t) / (8K²))` unless overridden.
pub fn plan_intervals(
    n: usize,
    min_degree: usize,
    k: u64,
    overrides: PlanOverrides,
) -> Result<IntervalPlan, DenseError> {
    if k < 3 {
        return Err(DenseError::KTooSmall(k));
    }
    if n < 3 {
        return Err(DenseError::TooFewVertices(n));
    }
    if min_degree == 0 {
        return Err(DenseError::ZeroMinDegree);
    }
    if let Some(t) = overrides.t {
        if !(t > 1.0) || !t.is_finite() {
            return Err(DenseError::BadOverrideT(t));
        }
    }
    if let Some(lambda) = overrides.lambda {
        if lambda < 3 {
            return Err(DenseError::BadOverrideLambda(lambda));
        }
    }
    let t = overrides.t.unwrap_or_else(|| formula_t(n as u64));
    let lambda = overrides
        .lambda
        .unwrap_or_else(|| (t.sqrt() / (8.0 * (k * k) as f64)).floor() as u64);
    let kf = k as f64;
    let nf = n as f64;
    let threshold = delta_threshold(k, n as u64);
    let mode = if overrides.t.is_some() || overrides.lambda.is_some() {
        PlanMode::Override
    } else {
        PlanMode::Formula
    };
    Ok(IntervalPlan {
        k,
        n,
        min_degree,
        t,
        lambda,
        interval_count: (kf * t).ceil() as usize,
        width: nf / t,
        margin: 3.0 * kf * nf / (t * t.sqrt()),
        mode,
        delta_threshold: threshold,
        meets_delta_threshold: min_degree as f64 >= threshold,
        threshold_vacuous: threshold > nf,
        lambda_ok: lambda >= 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_lambda_at_large_t() {
        // t = 20736 has sqrt(t) = 144
        let plan = plan_intervals(
            100,
            50,
            3,
            PlanOverrides {
                t: Some(20736.0),
                lambda: None,
            },
        )
        .unwrap();
        assert_eq!(plan.lambda, 2);
        assert!(!plan.lambda_ok);
    }

    #[test]
    fn overridden_grid() {
        let plan = plan_intervals(
            2000,
            1100,
            3,
            PlanOverrides {
                t: Some(400.0),
                lambda: Some(3),
            },
        )
        .unwrap();
        assert_eq!(plan.mode, PlanMode::Override);
        for j in 0..10 {
            assert_eq!(plan.endpoint(j), 1100.0 + 5.0 * j as f64);
        }
        assert_eq!(plan.interval_count, 1200);
        assert_eq!(plan.interval_of(1100.0), Some(1));
        assert_eq!(plan.interval_of(1104.0), Some(1));
        assert_eq!(plan.interval_of(1105.0), Some(2));
        assert_eq!(plan.interval_of(1099.0), None);
        assert_eq!(plan.interval_of(1100.0 + 6000.0), None);
        assert_eq!(plan.integers_in(2), 1105..1110);
        assert!(plan.lambda_ok);
    }

    #[test]
    fn formula_mode_at_a_million_is_vacuous() {
        let plan = plan_intervals(1_000_000, 900_000, 3, PlanOverrides::default()).unwrap();
        assert_eq!(plan.mode, PlanMode::Formula);
        assert!(plan.threshold_vacuous);
        assert!(!plan.meets_delta_threshold);
        assert_eq!(plan.lambda, 0);
        assert!((plan.t - 41.67).abs() < 0.01);
    }

    #[test]
    fn rejects_bad_overrides() {
        let bad_lambda = PlanOverrides {
            t: Some(100.0),
            lambda: Some(2),
        };
        assert_eq!(
            plan_intervals(100, 50, 3, bad_lambda),
            Err(DenseError::BadOverrideLambda(2))
        );
        let bad_t = PlanOverrides {
            t: Some(1.0),
            lambda: None,
        };
        assert!(plan_intervals(100, 50, 3, bad_t).is_err());
        assert_eq!(
            plan_intervals(100, 50, 2, PlanOverrides::default()),
            Err(DenseError::KTooSmall(2))
        );
    }

    #[test]
    fn interval_lookup_agrees_with_endpoints() {
        let plan = plan_intervals(
            997,
            601,
            3,
            PlanOverrides {
                t: Some(37.3),
                lambda: Some(3),
            },
        )
        .unwrap();
        for s in 601..3000u64 {
            let v = s as f64;
            if let Some(j) = plan.interval_of(v) {
                assert!(plan.endpoint(j - 1) <= v && v < plan.endpoint(j));
                assert!(plan.integers_in(j).contains(&s));
            }
        }
    }
}
