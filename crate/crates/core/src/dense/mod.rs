//! Randomized three-phase weighting of dense graphs with weights `{1, 2, 3, K}`.
//!
//! 1. A random partition into a big set `B` and a small set `S`, a reserved
//!    edge set `M` between them and a heavy set `L`, resampled until a list of
//!    concentration events holds ([`events`]).
//! 2. Big vertices are spread over an interval grid onto sums that are not
//!    `0` or `1` mod `λ`, using `+1` steps on reserved edges ([`adjust_b`]).
//! 3. Small vertices are moved onto distinct multiples of `λ` (ending on
//!    `s_v` or `s_v + 1`) through disjoint edge pools taken from an Eulerian
//!    orientation of `G[S]` ([`euler`], [`adjust_s`]).
//!
//! The guarantees behind each phase need astronomically large `n`, so at
//! practical sizes the pipeline runs with explicit `t`, `λ` and event slack
//! and every phase reports a structured failure instead of assuming success.

pub mod adjust_b;
pub mod adjust_s;
pub mod euler;
pub mod events;
pub mod partition;
pub mod pipeline;
pub mod plan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use adjust_b::{adjust_b, initial_weighting, BAdjustment, BAssignment};
pub use adjust_s::{adjust_s, compute_dangerous, dangerous_radius, OrderPolicy, SAdjustment, SStep};
pub use euler::{build_edge_pools, validate_pools};
pub use events::{check_events, sample_until_good, EventCheck, EventReport, SamplingOutcome, Slack};
pub use partition::{sample_partition, trial_seed, PartitionState, SamplingOverrides};
pub use pipeline::{run_pipeline, Outcome, Phase, PipelineConfig, SolveReport};
pub use plan::{plan_intervals, IntervalPlan, PlanMode, PlanOverrides};

/// Invalid parameters, rejected before any phase runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DenseError {
    #[error("K must be at least 3, got {0}")]
    KTooSmall(u64),
    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("minimum degree must be positive")]
    ZeroMinDegree,
    #[error("override t must be a finite real > 1, got {0}")]
    BadOverrideT(f64),
    #[error("override lambda must be at least 3, got {0}")]
    BadOverrideLambda(u64),
    #[error("sampling probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("slack multipliers must be finite and non-negative")]
    BadSlack,
}

/// Why a phase could not complete, with the offending vertex or interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhaseFailure {
    #[error("lambda = {lambda} is below 3; the residue classes cannot separate B from S")]
    LambdaTooSmall { lambda: u64 },
    #[error("no partition passed the events in {trials} trials")]
    TrialBudgetExhausted {
        trials: u64,
        failures: events::EventFailureCounts,
    },
    #[error("initial sum {sum} of big vertex {vertex} lies outside the interval grid")]
    SumOutsideIntervals { vertex: usize, sum: u64 },
    #[error("no admissible value left in the interval above I_{interval} for vertex {vertex}")]
    IntervalOverflow { vertex: usize, interval: usize },
    #[error("vertex {vertex} in I_{interval} needs {needed} reserved edges, has {available}")]
    InsufficientMEdges {
        vertex: usize,
        interval: usize,
        needed: usize,
        available: usize,
    },
    #[error("vertex {vertex}: no free multiple of lambda in [{range_lo}, {range_hi}] (blocked {blocked:?})")]
    NoAdmissibleTarget {
        vertex: usize,
        range_lo: u64,
        range_hi: u64,
        blocked: Vec<u64>,
    },
    #[error("vertex {vertex} left {{s, s+1}} with sum {sum}, target {target}")]
    ContainmentViolated { vertex: usize, sum: u64, target: u64 },
    #[error("processing order is not a permutation of S")]
    BadOrder,
    #[error("edge pools violate their contract: {detail}")]
    BadPools { detail: String },
    #[error("final weighting rejected: {detail}")]
    VerificationFailed { detail: String },
}
