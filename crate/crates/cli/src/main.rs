mod batch;
mod bounds;
mod dense;
mod exact;
mod report;
mod source;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

const EXIT_CODES: &str = "\
Exit codes:
  0  success: strength determined, pipeline verified, weighting irregular, batch written
  1  invalid arguments, I/O or parse error
  2  exact search ran out of its node budget
  3  dense pipeline failed a phase or is not applicable to the graph
  4  verify found a collision or a weight outside 1..=k";

#[derive(Debug, Parser)]
#[command(name = "irreg", version, about = "Irregularity strength of graphs", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact irregularity strength by exhaustive search
    Exact(exact::ExactArgs),
    /// Randomized construction for dense graphs
    Dense(dense::DenseArgs),
    /// Check that a weighting is irregular
    Verify(verify::VerifyArgs),
    /// Closed-form bounds for given n, degree and K
    Bounds(bounds::BoundsArgs),
    /// Write a generated graph as an edge list
    Gen(GenArgs),
    /// Run a list of instances from a JSON spec
    Batch(batch::BatchArgs),
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[command(flatten)]
    source: source::GraphSource,

    /// Output file; stdout if omitted
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn gen(args: &GenArgs) -> anyhow::Result<u8> {
    let g = args.source.load()?;
    report::write_or_print(args.out.as_deref(), &g.to_edge_list())?;
    if let Some(path) = &args.out {
        println!("wrote {} (n = {}, m = {})", path.display(), g.vertex_count(), g.edge_count());
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Exact(args) => exact::run(args),
        Command::Dense(args) => dense::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Bounds(args) => bounds::run(args),
        Command::Gen(args) => gen(args),
        Command::Batch(args) => batch::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
