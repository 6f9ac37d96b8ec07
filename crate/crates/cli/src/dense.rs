use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use irreg_core::dense::{run_pipeline, Outcome, OrderPolicy, PipelineConfig, Slack, SolveReport};
use irreg_core::graph::Graph;
use serde::Serialize;

use crate::report::{self, Format, TOOL_VERSION};
use crate::source::GraphSource;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Order {
    AscendingId,
    DescendingId,
    AscendingInitialSum,
}

impl From<Order> for OrderPolicy {
    fn from(o: Order) -> Self {
        match o {
            Order::AscendingId => OrderPolicy::AscendingId,
            Order::DescendingId => OrderPolicy::DescendingId,
            Order::AscendingInitialSum => OrderPolicy::AscendingInitialSum,
        }
    }
}

#[derive(Debug, Args)]
pub struct DenseArgs {
    #[command(flatten)]
    pub source: GraphSource,

    /// Weight cap K (at least 3)
    #[arg(long = "k", visible_alias = "K", default_value_t = 3)]
    pub k: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Base config as JSON; the flags below override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Sampling trials before giving up
    #[arg(long)]
    pub trials: Option<u64>,

    #[arg(long)]
    pub override_t: Option<f64>,

    #[arg(long)]
    pub override_lambda: Option<u64>,

    /// One multiplier for all six events, or six comma-separated values
    #[arg(long, value_delimiter = ',')]
    pub slack: Vec<f64>,

    #[arg(long)]
    pub y_probability: Option<f64>,

    #[arg(long)]
    pub z_probability: Option<f64>,

    /// Fix every x_v instead of drawing it
    #[arg(long)]
    pub x_value: Option<f64>,

    /// Processing order for the small vertices
    #[arg(long, value_enum)]
    pub order: Option<Order>,

    /// Report file
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the final weighting here on success
    #[arg(long)]
    pub weights_out: Option<PathBuf>,
}

impl DenseArgs {
    pub fn resolve_config(&self) -> Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => PipelineConfig::default(),
        };
        if let Some(n) = self.trials {
            cfg.max_trials = n;
        }
        if self.override_t.is_some() {
            cfg.t = self.override_t;
        }
        if self.override_lambda.is_some() {
            cfg.lambda = self.override_lambda;
        }
        match self.slack.as_slice() {
            [] => {}
            [s] => cfg.slack = Slack::uniform(*s),
            &[a, b, c, d, e, f] => {
                cfg.slack = Slack {
                    sum_deviation: a,
                    big_per_interval: b,
                    small_per_interval: c,
                    big_reserved_degree: d,
                    small_reserved_degree: e,
                    small_inner_degree: f,
                }
            }
            other => bail!("--slack takes 1 or 6 values, got {}", other.len()),
        }
        if self.y_probability.is_some() {
            cfg.sampling.y_probability = self.y_probability;
        }
        if self.z_probability.is_some() {
            cfg.sampling.z_probability = self.z_probability;
        }
        if self.x_value.is_some() {
            cfg.sampling.x_value = self.x_value;
        }
        if let Some(o) = self.order {
            cfg.order = o.into();
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseReport {
    pub tool_version: &'static str,
    pub graph_source: String,
    #[serde(flatten)]
    pub report: SolveReport,
}

pub const CSV_HEADER: [&str; 13] = [
    "graph", "n", "m", "k", "seed", "status", "phase", "failure", "t", "lambda", "trials_used", "accepted_seed",
    "elapsed_ms",
];

impl DenseReport {
    pub fn csv_row(&self) -> Vec<String> {
        let r = &self.report;
        let (phase, failure) = match &r.outcome {
            Outcome::Success => (String::new(), String::new()),
            Outcome::PhaseFailure { phase, failure } => (phase_name(phase), failure.to_string()),
            Outcome::NotApplicable { reason } => (String::new(), reason.clone()),
        };
        vec![
            self.graph_source.clone(),
            r.graph.n.to_string(),
            r.graph.m.to_string(),
            r.k.to_string(),
            r.seed.to_string(),
            status_name(&r.outcome).into(),
            phase,
            failure,
            report::opt(r.plan.as_ref().map(|p| p.t)),
            report::opt(r.plan.as_ref().map(|p| p.lambda)),
            r.trials_used.to_string(),
            report::opt(r.accepted_seed),
            r.timing.elapsed_ms.to_string(),
        ]
    }

    pub fn exit_code(&self) -> u8 {
        if self.report.is_success() {
            0
        } else {
            3
        }
    }
}

pub fn status_name(o: &Outcome) -> &'static str {
    match o {
        Outcome::Success => "success",
        Outcome::PhaseFailure { .. } => "phase_failure",
        Outcome::NotApplicable { .. } => "not_applicable",
    }
}

fn phase_name<T: Serialize>(phase: &T) -> String {
    serde_json::to_value(phase)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn solve(g: &Graph, label: String, k: u64, seed: u64, cfg: &PipelineConfig) -> Result<DenseReport> {
    let report = run_pipeline(g, k, seed, cfg)?;
    Ok(DenseReport {
        tool_version: TOOL_VERSION,
        graph_source: label,
        report,
    })
}

/// One line describing how the run ended.
pub fn summary(rep: &DenseReport) -> String {
    let r = &rep.report;
    match &r.outcome {
        Outcome::Success => {
            let v = r.verification.as_ref().expect("success carries a verification");
            format!(
                "verified: irregular {}-weighting of {} edges, {} distinct sums, alphabet {:?}",
                r.k, r.graph.m, r.graph.n, v.alphabet
            )
        }
        Outcome::PhaseFailure { phase, failure } => format!("failed in phase {}: {failure}", phase_name(phase)),
        Outcome::NotApplicable { reason } => format!("not applicable: {reason}"),
    }
}

pub fn run(args: &DenseArgs) -> Result<u8> {
    let cfg = args.resolve_config()?;
    let g = args.source.load()?;
    let rep = solve(&g, args.source.describe(), args.k, args.seed, &cfg)?;
    if let Some(plan) = &rep.report.plan {
        println!("plan: t = {}, lambda = {}, intervals = {}", plan.t, plan.lambda, plan.interval_count);
    }
    println!("trials used: {}", rep.report.trials_used);
    println!("{}", summary(&rep));

    if let (Some(path), Some(w)) = (&args.weights_out, &rep.report.weighting) {
        let w = irreg_core::EdgeWeighting::new(w.clone(), args.k)?;
        report::write_or_print(Some(path), &w.to_file_format())?;
        println!("weights: {}", path.display());
    }
    if let Some(path) = &args.out {
        let text = match args.format {
            Format::Json => report::to_json(&rep)?,
            Format::Csv => report::to_csv(&CSV_HEADER, &[rep.csv_row()])?,
        };
        report::write_or_print(Some(path), &text)?;
    }
    Ok(rep.exit_code())
}
