use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::Args;
use irreg_core::dense::PipelineConfig;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{self, BoundsParams};
use crate::exact::{self, ExactParams, DEFAULT_K_MAX};
use crate::source::GraphSource;
use crate::{dense, report, verify};

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Batch spec (JSON)
    pub spec: PathBuf,

    /// Output prefix; writes <out>.json and <out>.csv
    #[arg(long)]
    pub out: PathBuf,

    /// Overrides the seed in the spec file
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchSpec {
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    rows: Vec<Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RowSpec {
    #[serde(default)]
    name: Option<String>,
    #[serde(flatten)]
    task: Task,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
enum Task {
    Exact {
        graph: GraphSource,
        #[serde(default = "default_k_max")]
        k_max: u64,
        #[serde(default = "default_budget")]
        budget: u64,
    },
    Dense {
        graph: GraphSource,
        #[serde(default = "default_k")]
        k: u64,
        /// Derived from the batch seed and row index when absent.
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        config: PipelineConfig,
    },
    Verify {
        graph: PathBuf,
        weights: PathBuf,
    },
    Bounds {
        n: u64,
        #[serde(default)]
        d: Option<u64>,
        #[serde(default)]
        k: Option<u64>,
    },
}

fn default_k_max() -> u64 {
    DEFAULT_K_MAX
}

fn default_budget() -> u64 {
    irreg_core::exact::DEFAULT_NODE_BUDGET
}

fn default_k() -> u64 {
    3
}

impl Task {
    fn name(&self) -> &'static str {
        match self {
            Task::Exact { .. } => "exact",
            Task::Dense { .. } => "dense",
            Task::Verify { .. } => "verify",
            Task::Bounds { .. } => "bounds",
        }
    }

    /// Makes relative paths relative to the spec file and fills in the row seed.
    fn resolve(&mut self, base: &Path, row_seed: u64) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        match self {
            Task::Exact { graph, .. } => graph.graph.as_mut().into_iter().for_each(fix),
            Task::Dense { graph, seed, .. } => {
                graph.graph.as_mut().into_iter().for_each(fix);
                seed.get_or_insert(row_seed);
            }
            Task::Verify { graph, weights } => {
                fix(graph);
                fix(weights);
            }
            Task::Bounds { .. } => {}
        }
    }
}

/// Seed for row `index`: stream `index` of the batch seed's generator.
pub fn row_seed(batch_seed: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(batch_seed);
    rng.set_stream(index as u64);
    rng.next_u64()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRow {
    pub index: usize,
    pub name: String,
    pub task: String,
    pub graph: String,
    pub seed: Option<u64>,
    pub status: String,
    pub exit_code: u8,
    pub result: String,
    pub detail: String,
    /// The row as run, defaults filled in.
    pub spec: Option<Value>,
    pub report: Option<Value>,
    pub elapsed_ms: f64,
}

pub const CSV_HEADER: [&str; 10] = [
    "index", "name", "task", "graph", "seed", "status", "exit_code", "result", "detail", "elapsed_ms",
];

impl BatchRow {
    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.name.clone(),
            self.task.clone(),
            self.graph.clone(),
            report::opt(self.seed),
            self.status.clone(),
            self.exit_code.to_string(),
            self.result.clone(),
            self.detail.clone(),
            self.elapsed_ms.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub rows: usize,
    pub ok: usize,
    pub failed: usize,
    pub errored: usize,
    /// `ok / rows`; absent for an empty batch.
    pub success_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub tool_version: String,
    pub spec_path: String,
    pub seed: u64,
    pub aggregate: Aggregate,
    pub rows: Vec<BatchRow>,
}

struct RowOutcome {
    graph: String,
    exit_code: u8,
    result: String,
    detail: String,
    report: Value,
}

fn run_task(task: &Task) -> Result<RowOutcome> {
    Ok(match task {
        Task::Exact { graph, k_max, budget } => {
            let g = graph.load()?;
            let params = ExactParams {
                k_max: *k_max,
                budget: *budget,
            };
            let rep = exact::solve(&g, graph.describe(), &params)?;
            RowOutcome {
                graph: rep.graph.clone(),
                exit_code: rep.exit_code(),
                result: exact::strength_text(&rep.strength),
                detail: format!("{} nodes", rep.nodes_explored),
                report: serde_json::to_value(&rep)?,
            }
        }
        Task::Dense { graph, k, seed, config } => {
            let g = graph.load()?;
            let seed = seed.expect("resolved before running");
            let rep = dense::solve(&g, graph.describe(), *k, seed, config)?;
            RowOutcome {
                graph: rep.graph_source.clone(),
                exit_code: rep.exit_code(),
                result: dense::status_name(&rep.report.outcome).into(),
                detail: dense::summary(&rep),
                report: serde_json::to_value(&rep)?,
            }
        }
        Task::Verify { graph, weights } => {
            let (g, text) = verify::load_pair(graph, weights)?;
            let verdict = verify::check(&g, &text)?;
            let result = serde_json::to_value(&verdict)?["verdict"].as_str().unwrap_or_default().to_string();
            RowOutcome {
                graph: graph.display().to_string(),
                exit_code: verdict.exit_code(),
                result,
                detail: verdict.message(),
                report: serde_json::to_value(&verdict)?,
            }
        }
        Task::Bounds { n, d, k } => {
            let tab = bounds::compute(&BoundsParams { n: *n, d: *d, k: *k })?;
            RowOutcome {
                graph: String::new(),
                exit_code: 0,
                result: report::opt(tab.lower_bound_regular),
                detail: format!(
                    "kkp {}, threshold {}",
                    report::opt(tab.kkp_upper_bound),
                    report::opt(tab.delta_threshold)
                ),
                report: serde_json::to_value(&tab)?,
            }
        }
    })
}

fn run_row(index: usize, raw: &Value, base: &Path, batch_seed: u64) -> BatchRow {
    let start = Instant::now();
    let mut row = BatchRow {
        index,
        name: raw.get("name").and_then(Value::as_str).unwrap_or_default().to_string(),
        task: raw.get("task").and_then(Value::as_str).unwrap_or_default().to_string(),
        graph: String::new(),
        seed: None,
        status: "error".into(),
        exit_code: 1,
        result: String::new(),
        detail: String::new(),
        spec: None,
        report: None,
        elapsed_ms: 0.0,
    };
    let outcome = serde_json::from_value::<RowSpec>(raw.clone())
        .context("invalid row")
        .and_then(|mut spec| {
            spec.task.resolve(base, row_seed(batch_seed, index));
            row.task = spec.task.name().into();
            if let Task::Dense { seed, .. } = &spec.task {
                row.seed = *seed;
            }
            row.spec = serde_json::to_value(&spec).ok();
            run_task(&spec.task)
        });
    match outcome {
        Ok(o) => {
            row.graph = o.graph;
            row.status = if o.exit_code == 0 { "ok" } else { "failed" }.into();
            row.exit_code = o.exit_code;
            row.result = o.result;
            row.detail = o.detail;
            row.report = Some(o.report);
        }
        Err(e) => row.detail = format!("{e:#}"),
    }
    row.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    row
}

pub fn run_batch(spec_path: &Path, seed_override: Option<u64>) -> Result<BatchReport> {
    let text = std::fs::read_to_string(spec_path).with_context(|| format!("reading {}", spec_path.display()))?;
    let spec: BatchSpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", spec_path.display()))?;
    let seed = seed_override.unwrap_or(spec.seed);
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let rows: Vec<BatchRow> = spec
        .rows
        .iter()
        .enumerate()
        .map(|(i, raw)| run_row(i, raw, base, seed))
        .collect();
    let count = |s: &str| rows.iter().filter(|r| r.status == s).count();
    let aggregate = Aggregate {
        rows: rows.len(),
        ok: count("ok"),
        failed: count("failed"),
        errored: count("error"),
        success_rate: (!rows.is_empty()).then(|| count("ok") as f64 / rows.len() as f64),
    };
    Ok(BatchReport {
        tool_version: report::TOOL_VERSION.into(),
        spec_path: spec_path.display().to_string(),
        seed,
        aggregate,
        rows,
    })
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

pub fn run(args: &BatchArgs) -> Result<u8> {
    if args.out.as_os_str().is_empty() {
        bail!("--out must not be empty");
    }
    let rep = run_batch(&args.spec, args.seed)?;
    for r in &rep.rows {
        println!("[{}] {} {} -> {} ({})", r.index, r.task, r.name, r.status, r.result);
    }
    let a = &rep.aggregate;
    println!("{} rows: {} ok, {} failed, {} errored", a.rows, a.ok, a.failed, a.errored);

    let json = with_suffix(&args.out, ".json");
    let csv = with_suffix(&args.out, ".csv");
    report::write_or_print(Some(&json), &report::to_json(&rep)?)?;
    let records: Vec<Vec<String>> = rep.rows.iter().map(BatchRow::csv_row).collect();
    report::write_or_print(Some(&csv), &report::to_csv(&CSV_HEADER, &records)?)?;
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(0)
}
