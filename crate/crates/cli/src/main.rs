//! `stabctab`: stable Betti numbers, perverse tables, germ invariants and
//! lattice bounds from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad usage or
//! invalid input.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

/// Largest truncation order accepted unless `STABCTAB_MAX_ORDER` says otherwise.
const DEFAULT_MAX_ORDER: u32 = 40;

#[derive(Debug, Parser)]
#[command(name = "stabctab", version, about = "Exact stable invariants of moduli of one-dimensional sheaves")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "tsv", global = true)]
    format: Format,

    /// Cap on every truncation order.
    #[arg(long, env = "STABCTAB_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER, global = true)]
    max_order_cap: u32,

    #[command(subcommand)]
    command: Command,
}

/// A surface given by its first two Betti numbers or by a preset name.
#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, requires = "b2", conflicts_with = "surface")]
    pub b1: Option<u32>,
    #[arg(long, requires = "b1", conflicts_with = "surface")]
    pub b2: Option<u32>,
    /// `enriques` or `bielliptic`.
    #[arg(long)]
    pub surface: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stable Betti numbers b_k for k <= max-k.
    StableBetti {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 12)]
        max_k: u32,
    },
    /// Stable perverse numbers n^{i,j} for i + j <= max-order.
    Perverse {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 12)]
        max_order: u32,
        /// Also solve the relative Hilbert scheme recursion and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Check the identity between H(q,t) and the substituted Göttsche series.
    Identity {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 12)]
        order: u32,
        /// Test hook: corrupt one coefficient before comparing.
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// Milnor and Tjurina numbers of a plane curve germ, and with branches
    /// its delta invariant and Milnor's formula.
    Germ {
        #[arg(long)]
        poly: String,
        /// JSON file `{"truncation": T, "branches": [{"x": "...", "y": "..."}]}`.
        #[arg(long)]
        branches: Option<PathBuf>,
    },
    /// Codimension bounds and stabilization thresholds.
    Bounds {
        #[command(subcommand)]
        surface: commands::BoundsSurface,
    },
    /// Pairs of positive classes summing to a given class.
    Decompose {
        /// Lattice TOML file.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        lattice: Option<PathBuf>,
        /// `bielliptic-rank2` or `enriques-u-e8`.
        #[arg(long)]
        preset: Option<String>,
        /// Coordinates of the class, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Run the built-in verification suite.
    Verify,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

fn run(cli: Cli) -> Result<output::Report, Failure> {
    let cap = cli.max_order_cap;
    match cli.command {
        Command::StableBetti { surface, max_k } => commands::stable_betti(&surface, max_k, cap),
        Command::Perverse {
            surface,
            max_order,
            oracle,
        } => commands::perverse(&surface, max_order, oracle, cap),
        Command::Identity { surface, order, perturb } => commands::identity(&surface, order, perturb, cap),
        Command::Germ { poly, branches } => commands::germ(&poly, branches.as_deref()),
        Command::Bounds { surface } => commands::bounds(&surface),
        Command::Decompose { lattice, preset, beta } => {
            commands::decompose(lattice.as_deref(), preset.as_deref(), &beta)
        }
        Command::Verify => Ok(commands::verify()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
