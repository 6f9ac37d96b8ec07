use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use irreg_core::exact::{exact_strength, Strength, DEFAULT_NODE_BUDGET};
use irreg_core::graph::Graph;
use serde::{Deserialize, Serialize};

use crate::report::{self, Format, Timing, TOOL_VERSION};
use crate::source::GraphSource;

pub const DEFAULT_K_MAX: u64 = 8;

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: GraphSource,

    #[command(flatten)]
    pub params: ExactParams,

    /// Report file
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the witness weighting here
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactParams {
    /// Largest cap to try
    #[arg(long = "k-max", visible_aliases = ["k", "K"], default_value_t = DEFAULT_K_MAX)]
    #[serde(default = "default_k_max")]
    pub k_max: u64,

    /// Search nodes allowed per cap
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_k_max() -> u64 {
    DEFAULT_K_MAX
}

fn default_budget() -> u64 {
    DEFAULT_NODE_BUDGET
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactReport {
    pub tool_version: &'static str,
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub k_max: u64,
    pub budget: u64,
    pub strength: Strength,
    pub nodes_explored: u64,
    pub witness: Option<Vec<u64>>,
    pub timing: Timing,
}

pub const CSV_HEADER: [&str; 8] = ["graph", "n", "m", "k_max", "budget", "strength", "nodes_explored", "elapsed_ms"];

impl ExactReport {
    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.graph.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.k_max.to_string(),
            self.budget.to_string(),
            strength_text(&self.strength),
            self.nodes_explored.to_string(),
            self.timing.elapsed_ms.to_string(),
        ]
    }

    pub fn exit_code(&self) -> u8 {
        match self.strength {
            Strength::BudgetExhausted { .. } => 2,
            _ => 0,
        }
    }
}

pub fn strength_text(s: &Strength) -> String {
    match s {
        Strength::Finite { value } => value.to_string(),
        Strength::Infinite => "infinite".into(),
        Strength::AboveCap { k_max } => format!(">{k_max}"),
        Strength::BudgetExhausted { k } => format!("unknown (budget exhausted at k={k})"),
    }
}

pub fn solve(g: &Graph, label: String, params: &ExactParams) -> Result<ExactReport> {
    if params.k_max == 0 {
        bail!("--k-max must be at least 1");
    }
    let r = exact_strength(g, params.k_max, params.budget);
    Ok(ExactReport {
        tool_version: TOOL_VERSION,
        graph: label,
        n: g.vertex_count(),
        m: g.edge_count(),
        k_max: params.k_max,
        budget: params.budget,
        strength: r.strength,
        nodes_explored: r.nodes_explored,
        witness: r.witness.map(|w| w.weights().to_vec()),
        timing: Timing {
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        },
    })
}

pub fn run(args: &ExactArgs) -> Result<u8> {
    let g = args.source.load()?;
    let rep = solve(&g, args.source.describe(), &args.params)?;
    println!("strength: {}", strength_text(&rep.strength));
    println!("nodes explored: {}", rep.nodes_explored);

    if let (Some(path), Some(w)) = (&args.witness_out, &rep.witness) {
        let Strength::Finite { value } = rep.strength else { unreachable!() };
        let w = irreg_core::EdgeWeighting::new(w.clone(), value)?;
        report::write_or_print(Some(path), &w.to_file_format())?;
        println!("witness: {}", path.display());
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
