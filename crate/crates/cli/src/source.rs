use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use irreg_core::graph::{
    generate_circulant, generate_complete, generate_min_degree_random, generate_petersen, parse_edge_list, Graph,
    DEFAULT_RESAMPLE_ATTEMPTS,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Complete,
    Petersen,
    Circulant,
    /// G(n, p) resampled until the minimum degree is reached.
    Random,
}

/// Exactly one of a file or a generator.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSource {
    /// Edge-list file ("n m" header, then one "u v" per line)
    #[arg(long, conflicts_with = "generator")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,

    #[arg(long, value_enum)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,

    /// Vertex count for complete, circulant and random graphs
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,

    /// Circulant offsets, comma separated
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub offsets: Vec<usize>,

    /// Edge probability for the random generator
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,

    /// Minimum degree required by the random generator
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<usize>,

    /// Seed for the random generator (independent of --seed)
    #[arg(long, default_value_t = 0)]
    #[serde(default)]
    pub graph_seed: u64,
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match (&self.graph, self.generator) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (None, Some(kind)) => self.generate(kind),
            (Some(_), Some(_)) => bail!("give either --graph or --generator, not both"),
            (None, None) => bail!("a graph is required: --graph <file> or --generator <kind>"),
        }
    }

    fn generate(&self, kind: Generator) -> Result<Graph> {
        let n = || self.n.context("--n is required for this generator");
        Ok(match kind {
            Generator::Complete => generate_complete(n()?),
            Generator::Petersen => generate_petersen(),
            Generator::Circulant => generate_circulant(n()?, &self.offsets)?,
            Generator::Random => {
                let p = self.p.context("--p is required for the random generator")?;
                generate_min_degree_random(
                    n()?,
                    p,
                    self.min_degree.unwrap_or(0),
                    self.graph_seed,
                    DEFAULT_RESAMPLE_ATTEMPTS,
                )?
            }
        })
    }

    pub fn describe(&self) -> String {
        match (&self.graph, self.generator) {
            (Some(path), _) => path.display().to_string(),
            (None, Some(Generator::Petersen)) => "petersen".into(),
            (None, Some(Generator::Complete)) => format!("complete(n={})", self.n.unwrap_or(0)),
            (None, Some(Generator::Circulant)) => format!("circulant(n={}, offsets={:?})", self.n.unwrap_or(0), self.offsets),
            (None, Some(Generator::Random)) => format!(
                "random(n={}, p={}, min_degree={}, seed={})",
                self.n.unwrap_or(0),
                self.p.unwrap_or(0.0),
                self.min_degree.unwrap_or(0),
                self.graph_seed
            ),
            (None, None) => "none".into(),
        }
    }
}
