//! `dimerq`: quantum discord, concurrence, and multiple-quantum coherence
//! intensities of a dipolar-coupled spin-1/2 pair, on the command line.
//!
//! Exit codes: 0 success, 1 usage/domain error, 2 verification failure,
//! 3 I/O error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(
    name = "dimerq",
    version,
    about = "Quantum discord, concurrence and MQ coherence intensities for a thermal spin dimer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every measure at one point fixed by two of beta, xi (or D·tau), G
    Point(PointArgs),
    /// Sweep one or two variables over a grid
    Sweep(SweepArgs),
    /// Write figure data files (fig1..fig3b CSV) and a thresholds summary
    Figures(FiguresArgs),
    /// Entanglement and intensity bounds along a beta, G, or xi slice
    Thresholds(ThresholdsArgs),
    /// Run the oracle-equivalence and invariant suite
    Verify(VerifyArgs),
}

/// Point coordinates: any two of beta, xi, G; (--coupling, --tau) may stand
/// in for xi.
#[derive(Args, Debug, Clone)]
pub struct CommonPoint {
    /// Dimensionless inverse temperature (>= 0)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Preparation parameter xi = |cos(D·tau)|, in [0, 1]
    #[arg(long)]
    pub xi: Option<f64>,
    /// Second-order coherence intensity G
    #[arg(long)]
    pub g: Option<f64>,
    /// Dipolar coupling D in angular-frequency units (with --tau supplies xi)
    #[arg(long)]
    pub coupling: Option<f64>,
    /// Preparation time tau (with --coupling supplies xi)
    #[arg(long)]
    pub tau: Option<f64>,
}

#[derive(Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub point: CommonPoint,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVarKind {
    Beta,
    Xi,
    G,
    Tau,
    T,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Swept variable; repeat for a 2-variable grid
    #[arg(long = "var", value_enum)]
    pub vars: Vec<SweepVarKind>,
    /// Grid start (one per --var)
    #[arg(long = "start")]
    pub starts: Vec<f64>,
    /// Grid stop (one per --var)
    #[arg(long = "stop")]
    pub stops: Vec<f64>,
    /// Grid size, at least 2 (one per --var)
    #[arg(long = "count")]
    pub counts: Vec<usize>,
    #[command(flatten)]
    pub fixed: CommonPoint,
    /// Evolution-period constant
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Fixed evolution time for the magnetization columns of tau sweeps
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct FiguresArgs {
    /// Directory for fig1.csv, fig2a.csv, fig2b.csv, fig3a.csv, fig3b.csv,
    /// thresholds.json
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ThresholdsArgs {
    /// Fixed inverse temperature: reports G1 bounds
    #[arg(long)]
    pub beta: Option<f64>,
    /// Fixed intensity in (0, 1/2): reports beta and xi bounds
    #[arg(long)]
    pub g: Option<f64>,
    /// Fixed xi in [0, 1]: reports G2 bounds
    #[arg(long)]
    pub xi: Option<f64>,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Density of the n-by-n parameter grids (minimum 4)
    #[arg(long, default_value_t = 15)]
    pub grid: usize,
}

/// CLI failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(usize),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Verification(n) => write!(f, "{n} verification check(s) failed"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<dimerq_core::Error> for CliError {
    fn from(e: dimerq_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Point(args) => commands::cmd_point(&args),
        Command::Sweep(args) => commands::cmd_sweep(&args),
        Command::Figures(args) => commands::cmd_figures(&args),
        Command::Thresholds(args) => commands::cmd_thresholds(&args),
        Command::Verify(args) => commands::cmd_verify(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
