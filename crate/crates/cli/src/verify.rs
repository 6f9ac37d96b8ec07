use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use irreg_core::graph::{parse_edge_list, Graph};
use irreg_core::weighting::{find_collision, parse_weighting, weighted_degrees, WeightError};
use serde::Serialize;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Edge-list file
    #[arg(long)]
    pub graph: PathBuf,

    /// Weighting file ("m k", then one weight per line)
    #[arg(long)]
    pub weights: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Irregular { distinct_sums: usize },
    Collision { u: usize, v: usize, sum: u64 },
    CapViolation { edge: usize, weight: u64, cap: u64 },
}

impl Verdict {
    pub fn exit_code(&self) -> u8 {
        match self {
            Verdict::Irregular { .. } => 0,
            _ => 4,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Verdict::Irregular { distinct_sums } => format!("irregular: {distinct_sums} distinct weighted degrees"),
            Verdict::Collision { u, v, sum } => format!("collision: vertices {u} and {v} both have weighted degree {sum}"),
            Verdict::CapViolation { edge, weight, cap } => {
                format!("cap violation: edge {edge} has weight {weight} outside 1..={cap}")
            }
        }
    }
}

/// Parse and length errors are `Err`; everything else is a verdict.
pub fn check(g: &Graph, weights_text: &str) -> Result<Verdict> {
    let file = parse_weighting(weights_text)?;
    if file.weights.len() != g.edge_count() {
        return Err(WeightError::LengthMismatch {
            expected: g.edge_count(),
            found: file.weights.len(),
        }
        .into());
    }
    let w = match file.into_weighting() {
        Ok(w) => w,
        Err(WeightError::OutOfRange { edge, weight, cap }) => return Ok(Verdict::CapViolation { edge, weight, cap }),
        Err(WeightError::ZeroCap) => {
            return Ok(Verdict::CapViolation {
                edge: 0,
                weight: 0,
                cap: 0,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let sums = weighted_degrees(g, &w)?.sums;
    Ok(match find_collision(&sums) {
        None => Verdict::Irregular {
            distinct_sums: sums.len(),
        },
        Some((u, v, sum)) => Verdict::Collision { u, v, sum },
    })
}

pub fn load_pair(graph: &Path, weights: &Path) -> Result<(Graph, String)> {
    let text = std::fs::read_to_string(graph).with_context(|| format!("reading {}", graph.display()))?;
    let g = parse_edge_list(&text).with_context(|| format!("parsing {}", graph.display()))?;
    let w = std::fs::read_to_string(weights).with_context(|| format!("reading {}", weights.display()))?;
    Ok((g, w))
}

pub fn run(args: &VerifyArgs) -> Result<u8> {
    let (g, text) = load_pair(&args.graph, &args.weights)?;
    let verdict = check(&g, &text).with_context(|| format!("checking {}", args.weights.display()))?;
    println!("{}", verdict.message());
    Ok(verdict.exit_code())
}
