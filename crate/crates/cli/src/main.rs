//! `chiralwalk`: classification, walk sweeps, circuit sweeps and property
//! checks as file-to-file commands.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage, parse or I/O error.

mod angle;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "chiralwalk", version, about = "Chiral quantum walks and palindromic circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a graph Hamiltonian by its time-reversal behaviour.
    Classify(ClassifyArgs),
    /// Transition probabilities of e^{-iHt} over a time grid.
    Evolve(EvolveArgs),
    /// Transition probabilities of the three-node palindrome over an (alpha, theta) grid.
    CircuitSweep(SweepArgs),
    /// Transfer surface, constant-alpha slices and a summary of extrema.
    ReproduceFig2(Fig2Args),
    /// Product-formula error of the palindromic circuit over a halving theta ladder.
    TrotterCheck(TrotterArgs),
    /// Seeded invariant suite; exits 1 on any violation.
    Properties(PropertiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    /// `key=value` lines.
    Kv,
    /// Header plus one CSV row.
    Csv,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance of the sampled time-symmetry check.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Kv)]
    format: ReportFormat,
}

#[derive(Debug, Args)]
struct EvolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid is t_k = k t_max / t_count for k = 1..=t_count; t_max = 0 gives {0}.
    #[arg(long, default_value = "2pi")]
    t_max: String,
    #[arg(long, default_value_t = 256)]
    t_count: usize,
}

#[derive(Debug, Args)]
struct ThetaGrid {
    #[arg(long, default_value = "-pi", allow_hyphen_values = true)]
    theta_min: String,
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    theta_max: String,
    #[arg(long, default_value = "pi/18")]
    theta_step: String,
    /// Read plain-number angles as degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated gate phases.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,pi/2,pi,3pi/2")]
    alpha: Vec<String>,
    #[command(flatten)]
    theta: ThetaGrid,
    /// Merge the two central gates into one.
    #[arg(long)]
    fuse_center: bool,
    /// Half-sequence template; each gate's phase is offset by alpha and its
    /// angle multiplied by theta.
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Fig2Args {
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 64)]
    alpha_count: usize,
    #[arg(long, default_value_t = 64)]
    theta_count: usize,
    /// Slice grid.
    #[command(flatten)]
    theta: ThetaGrid,
    #[arg(long)]
    fuse_center: bool,
}

#[derive(Debug, Args)]
struct TrotterArgs {
    /// Uniform-magnitude graph; the three-node ring when omitted.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "0.1")]
    theta_max: String,
    /// Number of halvings.
    #[arg(long, default_value_t = 4)]
    levels: usize,
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Args)]
struct PropertiesArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Flip one gate phase in the flux-dependence check; that property must fail.
    #[arg(long)]
    inject_fault: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Violation(String),
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.into())
            }
        }
    )*};
}

usage_from!(anyhow::Error, chiralwalk::Error, std::io::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(a) => commands::classify(&a),
        Command::Evolve(a) => commands::evolve(&a),
        Command::CircuitSweep(a) => commands::circuit_sweep(&a),
        Command::ReproduceFig2(a) => commands::reproduce_fig2(&a),
        Command::TrotterCheck(a) => commands::trotter_check(&a),
        Command::Properties(a) => commands::properties(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("chiralwalk: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("chiralwalk: {e:#}");
            ExitCode::from(2)
        }
    }
}
