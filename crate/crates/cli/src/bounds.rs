use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use irreg_core::chernoff::union_bound_diagnostic;
use irreg_core::weighting::{delta_threshold, formula_t, kkp_upper_bound, lower_bound_regular};
use serde::{Deserialize, Serialize};

use crate::report::{self, Format};

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsParams {
    /// Number of vertices
    #[arg(long)]
    pub n: u64,

    /// Degree: the regular degree for the counting bound, the minimum degree for the 6⌈n/δ⌉ bound
    #[arg(long)]
    #[serde(default)]
    pub d: Option<u64>,

    /// Weight cap for the dense threshold
    #[arg(long = "k", visible_alias = "K")]
    #[serde(default)]
    pub k: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub params: BoundsParams,

    /// Also write the table as a report
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsTable {
    pub n: u64,
    pub d: Option<u64>,
    pub k: Option<u64>,
    pub lower_bound_regular: Option<u64>,
    pub kkp_upper_bound: Option<u64>,
    pub t: Option<f64>,
    pub delta_threshold: Option<f64>,
    /// The threshold exceeds n - 1, so no graph on n vertices meets it.
    pub threshold_vacuous: Option<bool>,
    pub union_bound: Option<f64>,
}

pub const CSV_HEADER: [&str; 9] = [
    "n", "d", "k", "lower_bound_regular", "kkp_upper_bound", "t", "delta_threshold", "threshold_vacuous", "union_bound",
];

impl BoundsTable {
    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            report::opt(self.d),
            report::opt(self.k),
            report::opt(self.lower_bound_regular),
            report::opt(self.kkp_upper_bound),
            report::opt(self.t),
            report::opt(self.delta_threshold),
            report::opt(self.threshold_vacuous),
            report::opt(self.union_bound),
        ]
    }
}

pub fn compute(p: &BoundsParams) -> Result<BoundsTable> {
    if p.n < 2 {
        bail!("--n must be at least 2");
    }
    if let Some(d) = p.d {
        if d == 0 || d >= p.n {
            bail!("--d must lie in 1..n, got {d}");
        }
    }
    if let Some(k) = p.k {
        if k < 2 {
            bail!("--K must be at least 2, got {k}");
        }
    }
    let t = p.k.map(|_| formula_t(p.n));
    let threshold = p.k.map(|k| delta_threshold(k, p.n));
    Ok(BoundsTable {
        n: p.n,
        d: p.d,
        k: p.k,
        lower_bound_regular: p.d.map(|d| lower_bound_regular(p.n, d)),
        kkp_upper_bound: p.d.map(|d| kkp_upper_bound(p.n, d)),
        t,
        delta_threshold: threshold,
        threshold_vacuous: threshold.map(|th| th > (p.n - 1) as f64),
        union_bound: p.k.zip(t).map(|(k, t)| union_bound_diagnostic(p.n, k, t)),
    })
}

pub fn run(args: &BoundsArgs) -> Result<u8> {
    let tab = compute(&args.params)?;
    println!("n = {}", tab.n);
    if let (Some(d), Some(lo), Some(hi)) = (tab.d, tab.lower_bound_regular, tab.kkp_upper_bound) {
        println!("lower bound (d-regular, d = {d}): {lo}");
        println!("KKP upper bound (min degree {d}): {hi}");
    }
    if let (Some(k), Some(t), Some(th), Some(v), Some(u)) =
        (tab.k, tab.t, tab.delta_threshold, tab.threshold_vacuous, tab.union_bound)
    {
        let flag = if v { " (vacuous: exceeds n - 1)" } else { "" };
        println!("t = (n / ln n)^(1/3) = {t}");
        println!("min-degree threshold for K = {k}: {th}{flag}");
        println!("union bound on failure probability: {u}");
    }
    if let Some(path) = &args.out {
        let text = match args.format {
            Format::Json => report::to_json(&tab)?,
            Format::Csv => report::to_csv(&CSV_HEADER, &[tab.csv_row()])?,
        };
        report::write_or_print(Some(path), &text)?;
    }
    Ok(0)
}
