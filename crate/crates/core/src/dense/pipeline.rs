use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::adjust_b::{adjust_b, initial_weighting, is_big_residue, BAssignment};
use super::adjust_s::{adjust_s, compute_dangerous, OrderPolicy, SStep};
use super::euler::{build_edge_pools, validate_pools};
use super::events::{sample_until_good, EventReport, SamplingOutcome, Slack};
use super::partition::{PartitionState, SamplingOverrides};
use super::plan::{plan_intervals, IntervalPlan, PlanOverrides};
use super::{DenseError, PhaseFailure};
use crate::graph::{check_goodness, Graph};
use crate::weighting::{find_collision, weighted_degrees_raw};

pub const DEFAULT_MAX_TRIALS: u64 = 100;

/// Everything besides the graph, `K` and the seed that a run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub t: Option<f64>,
    pub lambda: Option<u64>,
    pub slack: Slack,
    pub max_trials: u64,
    pub order: OrderPolicy,
    pub sampling: SamplingOverrides,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            t: None,
            lambda: None,
            slack: Slack::default(),
            max_trials: DEFAULT_MAX_TRIALS,
            order: OrderPolicy::default(),
            sampling: SamplingOverrides::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Plan,
    Sampling,
    AdjustBig,
    EdgePools,
    AdjustSmall,
    Verify,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Success,
    PhaseFailure { phase: Phase, failure: PhaseFailure },
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Checks run on the final weighting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub irregular: bool,
    pub alphabet: Vec<u64>,
    pub alphabet_ok: bool,
    pub edge_classes_ok: bool,
    pub big_residues_ok: bool,
    pub small_residues_ok: bool,
    pub big_sums_unchanged: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.irregular
            && self.alphabet_ok
            && self.edge_classes_ok
            && self.big_residues_ok
            && self.small_residues_ok
            && self.big_sums_unchanged
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Full record of one pipeline run. Everything except `timing` is a pure
/// function of the graph, `K`, the seed and the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub k: u64,
    pub seed: u64,
    pub config: PipelineConfig,
    pub graph: GraphSummary,
    pub plan: Option<IntervalPlan>,
    pub trials_used: u64,
    pub accepted_seed: Option<u64>,
    pub events: Option<EventReport>,
    pub small_count: Option<usize>,
    pub big_assignments: Vec<BAssignment>,
    pub small_steps: Vec<SStep>,
    /// Final weights by edge index, present only on success.
    pub weighting: Option<Vec<u64>>,
    pub verification: Option<Verification>,
    pub timing: Timing,
}

impl SolveReport {
    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::Success
    }
}

/// Plans, samples, runs both adjustment phases and verifies the result.
pub fn run_pipeline(g: &Graph, k: u64, seed: u64, config: &PipelineConfig) -> Result<SolveReport, DenseError> {
    let start = Instant::now();
    if k < 3 {
        return Err(DenseError::KTooSmall(k));
    }
    if !config.slack.is_valid() {
        return Err(DenseError::BadSlack);
    }
    let mut report = SolveReport {
        outcome: Outcome::Success,
        k,
        seed,
        config: config.clone(),
        graph: GraphSummary {
            n: g.vertex_count(),
            m: g.edge_count(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
        },
        plan: None,
        trials_used: 0,
        accepted_seed: None,
        events: None,
        small_count: None,
        big_assignments: Vec::new(),
        small_steps: Vec::new(),
        weighting: None,
        verification: None,
        timing: Timing { elapsed_ms: 0.0 },
    };
    let finish = |mut report: SolveReport, outcome: Outcome| {
        report.outcome = outcome;
        report.timing.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(report)
    };
    let fail = |phase: Phase, failure: PhaseFailure| Outcome::PhaseFailure { phase, failure };

    let goodness = check_goodness(g);
    if !goodness.is_good {
        let reason = format!(
            "graph is not good: {} isolated edges, {} isolated vertices",
            goodness.isolated_edges, goodness.isolated_vertices
        );
        return finish(report, Outcome::NotApplicable { reason });
    }
    if g.vertex_count() < 3 || g.min_degree() == 0 {
        let reason = "the construction needs n >= 3 and minimum degree >= 1".to_string();
        return finish(report, Outcome::NotApplicable { reason });
    }

    let overrides = PlanOverrides {
        t: config.t,
        lambda: config.lambda,
    };
    let plan = plan_intervals(g.vertex_count(), g.min_degree(), k, overrides)?;
    report.plan = Some(plan.clone());
    if !plan.lambda_ok {
        return finish(report, fail(Phase::Plan, PhaseFailure::LambdaTooSmall { lambda: plan.lambda }));
    }

    let accepted = match sample_until_good(g, &plan, seed, config.max_trials, &config.slack, &config.sampling)? {
        SamplingOutcome::Accepted(a) => a,
        SamplingOutcome::Exhausted { trials, failures } => {
            report.trials_used = trials;
            return finish(
                report,
                fail(Phase::Sampling, PhaseFailure::TrialBudgetExhausted { trials, failures }),
            );
        }
    };
    report.trials_used = accepted.trial + 1;
    report.accepted_seed = Some(accepted.seed);
    report.events = Some(accepted.report.clone());
    let state = accepted.state;
    report.small_count = Some(state.small.len());

    let (w0, sigma0) = initial_weighting(g, &state, k);
    let big = match adjust_b(g, &state, &plan, &w0) {
        Ok(b) => b,
        Err(f) => return finish(report, fail(Phase::AdjustBig, f)),
    };
    report.big_assignments = big.assignments.clone();

    let pools = build_edge_pools(g, &state.small);
    if let Err(detail) = validate_pools(g, &state.small, &pools) {
        return finish(report, fail(Phase::EdgePools, PhaseFailure::BadPools { detail }));
    }
    let dangerous = compute_dangerous(&state, &sigma0.sums, &plan);
    let order = config.order.order(&state.small, &sigma0.sums);
    let small = match adjust_s(g, &state, &plan, &big.weighting, &order, &pools, &dangerous) {
        Ok(s) => s,
        Err(f) => return finish(report, fail(Phase::AdjustSmall, f)),
    };
    report.small_steps = small.steps.clone();

    let verification = verify(g, &state, &plan, small.weighting.weights(), &big.sums);
    let passed = verification.passed();
    let detail = describe_rejection(g, small.weighting.weights(), &verification);
    report.verification = Some(verification);
    if !passed {
        return finish(report, fail(Phase::Verify, PhaseFailure::VerificationFailed { detail }));
    }
    report.weighting = Some(small.weighting.weights().to_vec());
    finish(report, Outcome::Success)
}

fn verify(g: &Graph, state: &PartitionState, plan: &IntervalPlan, weights: &[u64], big_sums: &[u64]) -> Verification {
    let k = plan.k;
    let lambda = plan.lambda;
    let sums = weighted_degrees_raw(g, weights).expect("one weight per edge").sums;
    let mut alphabet = weights.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let allowed = [1, 2, 3, k];
    let edge_classes_ok = g.edges().iter().enumerate().all(|(e, &(u, v))| {
        let w = weights[e];
        if state.y[u] && state.y[v] {
            (1..=3).contains(&w)
        } else if state.in_m[e] {
            w == 1 || w == 2
        } else {
            w == 1 || w == k
        }
    });
    Verification {
        irregular: find_collision(&sums).is_none(),
        alphabet_ok: alphabet.iter().all(|w| allowed.contains(w)),
        alphabet,
        edge_classes_ok,
        big_residues_ok: state.big.iter().all(|&v| is_big_residue(sums[v], lambda)),
        small_residues_ok: state.small.iter().all(|&v| sums[v] % lambda <= 1),
        big_sums_unchanged: state.big.iter().all(|&v| sums[v] == big_sums[v]),
    }
}

fn describe_rejection(g: &Graph, weights: &[u64], v: &Verification) -> String {
    let mut parts = Vec::new();
    if !v.irregular {
        let sums = weighted_degrees_raw(g, weights).expect("one weight per edge").sums;
        if let Some((a, b, s)) = find_collision(&sums) {
            parts.push(format!("vertices {a} and {b} share sum {s}"));
        }
    }
    for (ok, what) in [
        (v.alphabet_ok, "alphabet"),
        (v.edge_classes_ok, "edge classes"),
        (v.big_residues_ok, "big residues"),
        (v.small_residues_ok, "small residues"),
        (v.big_sums_unchanged, "big sums changed"),
    ] {
        if !ok {
            parts.push(what.to_string());
        }
    }
    parts.join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_complete;

    #[test]
    fn not_good_graph() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = run_pipeline(&g, 3, 0, &PipelineConfig::default()).unwrap();
        assert!(matches!(r.outcome, Outcome::NotApplicable { .. }));
    }

    #[test]
    fn formula_mode_is_vacuous_at_small_n() {
        let g = generate_complete(50);
        let r = run_pipeline(&g, 3, 0, &PipelineConfig::default()).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::PhaseFailure {
                phase: Phase::Plan,
                failure: PhaseFailure::LambdaTooSmall { lambda: 0 }
            }
        );
        assert!(r.plan.unwrap().threshold_vacuous);
    }

    #[test]
    fn config_errors() {
        let g = generate_complete(10);
        assert_eq!(run_pipeline(&g, 2, 0, &PipelineConfig::default()), Err(DenseError::KTooSmall(2)));
        let cfg = PipelineConfig {
            lambda: Some(1),
            ..Default::default()
        };
        assert_eq!(run_pipeline(&g, 3, 0, &cfg), Err(DenseError::BadOverrideLambda(1)));
        let cfg = PipelineConfig {
            slack: Slack::uniform(-1.0),
            ..Default::default()
        };
        assert_eq!(run_pipeline(&g, 3, 0, &cfg), Err(DenseError::BadSlack));
    }

    #[test]
    fn exhausted_sampling_counts_failures() {
        let g = generate_complete(30);
        let cfg = PipelineConfig {
            t: Some(25.0),
            lambda: Some(3),
            max_trials: 4,
            ..Default::default()
        };
        let r = run_pipeline(&g, 3, 7, &cfg).unwrap();
        let Outcome::PhaseFailure {
            phase: Phase::Sampling,
            failure: PhaseFailure::TrialBudgetExhausted { trials, failures },
        } = r.outcome
        else {
            panic!("unexpected outcome {:?}", r.outcome);
        };
        assert_eq!(trials, 4);
        // the exact big-interval cap is negative at t = 25
        assert_eq!(failures.big_per_interval, 4);
    }
}
