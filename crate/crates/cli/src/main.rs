//! `sck`: generators, transformation passes and verifiers for semiring circuits.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use sck::multilinear::PRODUCED_TERM_CAP;

#[derive(Debug, Parser)]
#[command(name = "sck", version, about = "Semiring circuit toolkit")]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on produced set sizes; overrides SCK_MAX_SET_SIZE.
    #[arg(long, global = true)]
    pub max_set_size: Option<usize>,
    /// Truncate produced polynomials above this degree.
    #[arg(long, global = true)]
    pub max_degree: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a family circuit, optionally with its minimization problem.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
    /// Evaluate a circuit at one point.
    Eval {
        circuit: PathBuf,
        /// Comma-separated values, integers or `p/q`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<String>,
        /// Semiring to evaluate in; defaults to the circuit's own.
        #[arg(long)]
        semiring: Option<String>,
    },
    /// Print the produced polynomial.
    Expand { circuit: PathBuf },
    /// Semantic and syntactic read parameters.
    Classify(FunctionArgs),
    /// Apply a transformation pass.
    Transform(TransformArgs),
    /// Check a structural claim; exits 1 when it fails.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Multilinearity checks.
    Mlin {
        #[command(subcommand)]
        check: MlinCommand,
    },
    /// Tropical approximation checks.
    Trop {
        #[command(subcommand)]
        check: TropCommand,
    },
    /// Reproducible desk-scale reports.
    Report {
        #[command(subcommand)]
        report: ReportCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Blocking function of the axis-parallel lines in `[m]^k`.
    Lines {
        m: usize,
        k: usize,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Blocking function of the `k`-subsets of `[m]` covered by each element.
    Cov {
        m: usize,
        k: usize,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Arithmetic circuit for the `n × n` permanent.
    Perm {
        n: usize,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Read-2 circuit for the `m × m` grid blocking function.
    Gap {
        m: usize,
        #[command(flatten)]
        out: GenOutput,
        /// Also write the read-1 circuit for the dual function.
        #[arg(long)]
        dual: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GenOutput {
    /// Circuit file to write instead of printing.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write the minimization problem over the lowest ones.
    #[arg(long)]
    pub problem: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    pub circuit: PathBuf,
    /// Function literal; defaults to the function the circuit computes.
    #[arg(long)]
    pub function: Option<String>,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// elim-const, homparts:R, envelope, pos, degree-reduce:K, read1-from-arith,
    /// const-free, to-tropical:K, from-tropical:K or retarget:SEMIRING.
    pub pass: String,
    pub circuit: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Function literal for passes that need one.
    #[arg(long)]
    pub function: Option<String>,
    /// Problem file for `from-tropical`.
    #[arg(long)]
    pub problem: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Produced exponent set agrees with the computed function.
    Struct(FunctionArgs),
    /// Produced supports are exactly the prime implicants.
    Tight(FunctionArgs),
    /// Syntactic and semantic multilinearity, zero-term impediment.
    Mlin(MlinArgs),
    /// Zero-term impediment.
    Impede(MlinArgs),
    /// Tropical approximation within a factor.
    Trop(TropArgs),
}

#[derive(Debug, Subcommand)]
pub enum MlinCommand {
    Check(MlinArgs),
}

#[derive(Debug, Subcommand)]
pub enum TropCommand {
    Check(TropArgs),
}

#[derive(Debug, Args)]
pub struct MlinArgs {
    #[command(flatten)]
    pub target: FunctionArgs,
    /// Cap on produced term sets.
    #[arg(long, default_value_t = PRODUCED_TERM_CAP)]
    pub term_cap: usize,
}

#[derive(Debug, Args)]
pub struct TropArgs {
    pub circuit: PathBuf,
    pub problem: PathBuf,
    /// Approximation factor, an integer or `p/q` at least 1.
    #[arg(long, default_value = "1")]
    pub factor: String,
    /// Sample this many weight vectors instead of the exhaustive grid.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Largest weight on the grid.
    #[arg(long)]
    pub max_weight: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum ReportCommand {
    /// Read-2 versus read-1 gap on the `m × m` grid.
    Gap {
        #[arg(long)]
        m: usize,
    },
    /// Decomposition-based size bound for the permanent.
    Matching {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] sck::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use sck::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                E::CapExceeded(_)
                | E::BudgetExceeded(_)
                | E::ArityTooLarge { .. }
                | E::DegreeOverflow
                | E::SizeOverflow(_) => 3,
                E::NotComputingF
                | E::NotReadK(_)
                | E::NotApproximating
                | E::ExponentSetNotLowF
                | E::NotHomogeneous
                | E::DegreeTooSmall(_)
                | E::ConstantFunction => 1,
                _ => 2,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let json = cli.json;
    match commands::run(cli, echo) {
        Ok(report) => {
            let text = if json { report.to_json() } else { report.to_text() };
            print!("{text}");
            ExitCode::from(if report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
