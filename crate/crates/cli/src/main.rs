use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seclab::instances::WeightLaw;

mod commands;

#[derive(Parser)]
#[command(name = "seclab", version, about = "Random-order online matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance file and print its summary.
    Generate(GenerateArgs),
    /// Check one instance against a suite of bounds.
    Run(RunArgs),
    /// Run a suite over every instance in a directory and a grid of p.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    RandomBipartite,
    RandomHvm,
    RandomGraph,
    RandomGrouped,
    Counterexample,
    Figure2,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    /// Output file; the instance goes to stdout when omitted.
    pub out: Option<PathBuf>,
    /// Left vertex count.
    #[arg(long, default_value_t = 10)]
    pub nl: usize,
    /// Right vertex count.
    #[arg(long, default_value_t = 10)]
    pub nr: usize,
    /// Edge probability.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Maximum right vertices per hyperedge.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Maximum hyperedges per left vertex.
    #[arg(long, default_value_t = 3)]
    pub options: usize,
    /// Vertex count for graphs, pair count for the counterexample.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    #[arg(long, default_value_t = 4)]
    pub groups: usize,
    /// `uniform:LOW:HIGH`, `exp:RATE` or `powerlaw:SHAPE`.
    #[arg(long, default_value = "uniform:0:1")]
    pub law: WeightLaw,
    #[arg(long, env = "SECLAB_SEED")]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct RunArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub suite: seclab::harness::Suite,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, env = "SECLAB_SEED")]
    pub seed: Option<u64>,
    /// Sampling probability; suites pick their own default.
    #[arg(long)]
    pub p: Option<f64>,
    /// Results CSV; written to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Threads for the trial loop; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write per-trial values next to the CSV.
    #[arg(long, requires = "out")]
    pub emit_trials: bool,
    /// Use greedy-scaled OPT when the exact solver is over budget.
    #[arg(long)]
    pub allow_fallback: bool,
}

#[derive(Args)]
pub struct SweepArgs {
    pub dir: PathBuf,
    #[arg(long)]
    pub suite: Option<seclab::harness::Suite>,
    /// Comma-separated sampling probabilities.
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, env = "SECLAB_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub allow_fallback: bool,
    /// TOML file with defaults for the options above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Result of a command that ran to completion.
pub enum Status {
    Pass,
    BoundFailure,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Generate(args) => commands::generate(args),
        Command::Run(args) => commands::run(args),
        Command::Sweep(args) => commands::sweep(args),
    };
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::BoundFailure) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
