//! The six families of good events a sampled partition must satisfy, and the
//! rejection sampler that draws partitions until all of them hold.

use serde::{Deserialize, Serialize};

use super::partition::{sample_partition, trial_seed, PartitionState, SamplingOverrides};
use super::plan::IntervalPlan;
use super::DenseError;
use crate::graph::Graph;

/// Per-event relaxation. A multiplier `s` moves each threshold `R` by
/// `(s - 1)·|R|` in the permissive direction: upper bounds become
/// `R + (s-1)|R|` (that is `s·R` for `R ≥ 0`) and lower bounds become
/// `R - (s-1)|R|`. `1.0` is the exact event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slack {
    pub sum_deviation: f64,
    pub big_per_interval: f64,
    pub small_per_interval: f64,
    pub big_reserved_degree: f64,
    pub small_reserved_degree: f64,
    pub small_inner_degree: f64,
}

impl Default for Slack {
    fn default() -> Self {
        Slack::uniform(1.0)
    }
}

impl Slack {
    pub fn uniform(s: f64) -> Self {
        Slack {
            sum_deviation: s,
            big_per_interval: s,
            small_per_interval: s,
            big_reserved_degree: s,
            small_reserved_degree: s,
            small_inner_degree: s,
        }
    }

    pub fn is_valid(&self) -> bool {
        [
            self.sum_deviation,
            self.big_per_interval,
            self.small_per_interval,
            self.big_reserved_degree,
            self.small_reserved_degree,
            self.small_inner_degree,
        ]
        .iter()
        .all(|s| s.is_finite() && *s >= 0.0)
    }
}

fn relaxed_upper(bound: f64, s: f64) -> f64 {
    bound + (s - 1.0) * bound.abs()
}

fn relaxed_lower(bound: f64, s: f64) -> f64 {
    bound - (s - 1.0) * bound.abs()
}

/// Outcome of one event family over all its instances (vertices or intervals).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventCheck {
    pub holds: bool,
    /// Smallest distance to the relaxed threshold on the permissive side;
    /// negative when violated, `None` when the family has no instances.
    pub worst_margin: Option<f64>,
    /// Vertices (or interval indices `j`) where the event fails.
    pub failing: Vec<usize>,
}

impl EventCheck {
    fn collect(items: impl Iterator<Item = (usize, f64)>) -> Self {
        let mut worst: Option<f64> = None;
        let mut failing = Vec::new();
        for (id, margin) in items {
            worst = Some(worst.map_or(margin, |w| w.min(margin)));
            if margin < 0.0 {
                failing.push(id);
            }
        }
        EventCheck {
            holds: failing.is_empty(),
            worst_margin: worst,
            failing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventReport {
    /// `|σ_v - S_v| ≤ 3Kn/(t√t)` for every vertex.
    pub sum_deviation: EventCheck,
    /// At most `(1 - 17K²/√t)·n/t` big proxies in each `I'_j`.
    pub big_per_interval: EventCheck,
    /// At most `(1 - 1/√t)·n/(t√t)` small proxies in each `I'_j`.
    pub small_per_interval: EventCheck,
    /// `d_M(v) ≥ 2n/t` for big `v`.
    pub big_reserved_degree: EventCheck,
    /// `d_M(v) ≤ 2K·d(v)/√t` for small `v`.
    pub small_reserved_degree: EventCheck,
    /// `|d_S(v) - d(v)/√t| ≤ √n` for small `v`.
    pub small_inner_degree: EventCheck,
    pub pass: bool,
}

impl EventReport {
    pub fn checks(&self) -> [(&'static str, &EventCheck); 6] {
        [
            ("sum_deviation", &self.sum_deviation),
            ("big_per_interval", &self.big_per_interval),
            ("small_per_interval", &self.small_per_interval),
            ("big_reserved_degree", &self.big_reserved_degree),
            ("small_reserved_degree", &self.small_reserved_degree),
            ("small_inner_degree", &self.small_inner_degree),
        ]
    }
}

/// Evaluates every event on `state`. Proxies are tested against the widened
/// intervals with real-valued endpoints.
pub fn check_events(g: &Graph, state: &PartitionState, plan: &IntervalPlan, slack: &Slack) -> EventReport {
    let n = plan.n as f64;
    let k = plan.k as f64;
    let t = plan.t;
    let sqrt_t = t.sqrt();

    let deviation_bound = relaxed_upper(3.0 * k * n / (t * sqrt_t), slack.sum_deviation);
    let sum_deviation = EventCheck::collect(
        (0..g.vertex_count()).map(|v| (v, deviation_bound - (state.sigma[v] as f64 - state.proxy[v]).abs())),
    );

    let big_cap = relaxed_upper((1.0 - 17.0 * k * k / sqrt_t) * n / t, slack.big_per_interval);
    let small_cap = relaxed_upper((1.0 - 1.0 / sqrt_t) * n / (t * sqrt_t), slack.small_per_interval);
    let mut big_counts = vec![0usize; plan.interval_count + 1];
    let mut small_counts = vec![0usize; plan.interval_count + 1];
    for v in 0..g.vertex_count() {
        let counts = if state.y[v] { &mut small_counts } else { &mut big_counts };
        let proxy = state.proxy[v];
        // I'_j overlaps its neighbours, so scan the few candidates around I_j
        let lo = ((proxy - plan.margin - plan.min_degree as f64) / plan.width).floor() as i64;
        let hi = ((proxy + plan.margin - plan.min_degree as f64) / plan.width).ceil() as i64 + 1;
        for j in lo.max(1)..=hi.min(plan.interval_count as i64) {
            let j = j as usize;
            if plan.widened_contains(j, proxy) {
                counts[j] += 1;
            }
        }
    }
    let big_per_interval =
        EventCheck::collect((1..=plan.interval_count).map(|j| (j, big_cap - big_counts[j] as f64)));
    let small_per_interval =
        EventCheck::collect((1..=plan.interval_count).map(|j| (j, small_cap - small_counts[j] as f64)));

    let reserve_floor = relaxed_lower(2.0 * n / t, slack.big_reserved_degree);
    let big_reserved_degree =
        EventCheck::collect(state.big.iter().map(|&v| (v, state.d_m[v] as f64 - reserve_floor)));
    let small_reserved_degree = EventCheck::collect(state.small.iter().map(|&v| {
        let cap = relaxed_upper(2.0 * k * g.degree(v) as f64 / sqrt_t, slack.small_reserved_degree);
        (v, cap - state.d_m[v] as f64)
    }));
    let inner_bound = relaxed_upper(n.sqrt(), slack.small_inner_degree);
    let small_inner_degree = EventCheck::collect(state.small.iter().map(|&v| {
        let expected = g.degree(v) as f64 / sqrt_t;
        (v, inner_bound - (state.d_s[v] as f64 - expected).abs())
    }));

    let pass = [
        &sum_deviation,
        &big_per_interval,
        &small_per_interval,
        &big_reserved_degree,
        &small_reserved_degree,
        &small_inner_degree,
    ]
    .iter()
    .all(|c| c.holds);
    EventReport {
        sum_deviation,
        big_per_interval,
        small_per_interval,
        big_reserved_degree,
        small_reserved_degree,
        small_inner_degree,
        pass,
    }
}

/// How often each event family failed across rejected trials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventFailureCounts {
    pub sum_deviation: usize,
    pub big_per_interval: usize,
    pub small_per_interval: usize,
    pub big_reserved_degree: usize,
    pub small_reserved_degree: usize,
    pub small_inner_degree: usize,
}

impl EventFailureCounts {
    fn record(&mut self, r: &EventReport) {
        self.sum_deviation += !r.sum_deviation.holds as usize;
        self.big_per_interval += !r.big_per_interval.holds as usize;
        self.small_per_interval += !r.small_per_interval.holds as usize;
        self.big_reserved_degree += !r.big_reserved_degree.holds as usize;
        self.small_reserved_degree += !r.small_reserved_degree.holds as usize;
        self.small_inner_degree += !r.small_inner_degree.holds as usize;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptedSample {
    pub state: PartitionState,
    pub report: EventReport,
    /// Zero-based index of the accepted trial.
    pub trial: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SamplingOutcome {
    Accepted(AcceptedSample),
    Exhausted {
        trials: u64,
        failures: EventFailureCounts,
    },
}

/// Draws partitions with seeds `seed, seed+1, ...` until one passes every
/// event or `max_trials` draws have been rejected.
pub fn sample_until_good(
    g: &Graph,
    plan: &IntervalPlan,
    seed: u64,
    max_trials: u64,
    slack: &Slack,
    overrides: &SamplingOverrides,
) -> Result<SamplingOutcome, DenseError> {
    let mut failures = EventFailureCounts::default();
    for trial in 0..max_trials {
        let trial_seed = trial_seed(seed, trial);
        let state = sample_partition(g, plan, trial_seed, overrides)?;
        let report = check_events(g, &state, plan, slack);
        if report.pass {
            return Ok(SamplingOutcome::Accepted(AcceptedSample {
                state,
                report,
                trial,
                seed: trial_seed,
            }));
        }
        failures.record(&report);
    }
    Ok(SamplingOutcome::Exhausted {
        trials: max_trials,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::plan::{plan_intervals, PlanOverrides};
    use crate::graph::generate_min_degree_random;

    fn setup() -> (Graph, IntervalPlan) {
        let g = generate_min_degree_random(80, 0.8, 50, 2, 100).unwrap();
        let plan = plan_intervals(
            80,
            g.min_degree(),
            3,
            PlanOverrides {
                t: Some(25.0),
                lambda: Some(3),
            },
        )
        .unwrap();
        (g, plan)
    }

    #[test]
    fn relaxation_directions() {
        assert_eq!(relaxed_upper(4.0, 1.0), 4.0);
        assert_eq!(relaxed_upper(4.0, 3.0), 12.0);
        assert_eq!(relaxed_upper(-4.0, 3.0), 4.0);
        assert_eq!(relaxed_lower(4.0, 0.5), 6.0);
        assert_eq!(relaxed_lower(4.0, 2.0), 0.0);
    }

    #[test]
    fn empty_small_set_starves_big_vertices() {
        let (g, plan) = setup();
        let overrides = SamplingOverrides {
            y_probability: Some(0.0),
            ..Default::default()
        };
        let state = sample_partition(&g, &plan, 3, &overrides).unwrap();
        let r = check_events(&g, &state, &plan, &Slack::default());
        assert!(!r.big_reserved_degree.holds);
        assert_eq!(r.big_reserved_degree.failing.len(), 80);
        assert!(r.small_reserved_degree.holds && r.small_reserved_degree.worst_margin.is_none());
        assert!(r.small_inner_degree.holds);
        assert!(r.small_per_interval.holds);
        assert!(!r.pass);
    }

    #[test]
    fn exact_proxies_give_full_margin() {
        let (g, plan) = setup();
        let mut state = sample_partition(&g, &plan, 3, &SamplingOverrides::default()).unwrap();
        state.proxy = state.sigma.iter().map(|&s| s as f64).collect();
        let r = check_events(&g, &state, &plan, &Slack::default());
        assert!(r.sum_deviation.holds);
        assert_eq!(r.sum_deviation.worst_margin, Some(plan.margin));
    }

    #[test]
    fn report_names_the_overfull_interval() {
        let (g, _) = setup();
        // sqrt(t) = 200 keeps the exact per-interval cap positive (but below 1)
        let plan = plan_intervals(
            80,
            g.min_degree(),
            3,
            PlanOverrides {
                t: Some(40_000.0),
                lambda: Some(3),
            },
        )
        .unwrap();
        let mut state = sample_partition(&g, &plan, 3, &SamplingOverrides::default()).unwrap();
        let mut slack = Slack::uniform(1e6);
        slack.big_per_interval = 1.0;
        // park every proxy above the grid except one big vertex inside I_4
        for p in state.proxy.iter_mut() {
            *p = 1e9;
        }
        let v = state.big[0];
        state.proxy[v] = (plan.endpoint(3) + plan.endpoint(4)) / 2.0;
        let r = check_events(&g, &state, &plan, &slack);
        assert!(!r.pass);
        assert_eq!(r.big_per_interval.failing, vec![4]);
    }

    #[test]
    fn sampling_budget() {
        let (g, plan) = setup();
        let none = sample_until_good(&g, &plan, 1, 0, &Slack::default(), &SamplingOverrides::default()).unwrap();
        assert_eq!(
            none,
            SamplingOutcome::Exhausted {
                trials: 0,
                failures: EventFailureCounts::default()
            }
        );
        let easy = Slack::uniform(1e9);
        let first = sample_until_good(&g, &plan, 1, 10, &easy, &SamplingOverrides::default()).unwrap();
        let SamplingOutcome::Accepted(a) = first else {
            panic!("huge slack accepts the first draw");
        };
        assert_eq!(a.trial, 0);
        let again = sample_until_good(&g, &plan, 1, 10, &easy, &SamplingOverrides::default()).unwrap();
        assert_eq!(again, SamplingOutcome::Accepted(a));
    }
}
