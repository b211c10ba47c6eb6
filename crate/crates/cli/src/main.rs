mod commands;
mod config;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use instanton_core::{ErrorKind, Result};

use config::{Format, RunConfig};
use render::{Output, Status};

const EXIT_INPUT: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

/// Instanton numbers of rank-2 bundles on the total space of O(-1) over P^1,
/// and the classical invariants of the plane curve germs that define them.
#[derive(Parser)]
#[command(name = "instanton", version)]
struct Cli {
    /// Output format [default: table, or the config file's `format`]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// `key = value` file with run defaults; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest i_max a window may reach before stabilization is declared failed
    #[arg(long, global = true)]
    max_window: Option<i32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct PolyArg {
    /// Polynomial, e.g. "x^2 - y^7"
    #[arg(value_name = "POLY", required_unless_present = "poly")]
    positional: Option<String>,
    #[arg(long, conflicts_with = "positional")]
    poly: Option<String>,
}

impl PolyArg {
    fn get(&self) -> &str {
        self.poly.as_deref().or(self.positional.as_deref()).unwrap_or_default()
    }
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(short)]
    j: u32,
    /// Exhaustive grid over the configured coefficient values instead of random sampling
    #[arg(long)]
    grid: bool,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Classical invariants and instanton numbers of a curve germ in (x, y)
    Curve {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(short)]
        j: u32,
    },
    /// Instanton numbers of the bundle with extension class p(z, u)
    Bundle {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(short)]
        j: u32,
    },
    /// Multiplicity, delta, Milnor and Tjurina numbers, branch count
    Classical {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Stratify the canonical coefficient space by (width, height)
    Strata(SweepArgs),
    /// Recompute the reference tables and compare with the stored values
    Tables {
        /// With --format csv, write one file per table into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Strata of fixed charge for every j up to --max-j
    Moduli {
        #[arg(long)]
        charge: usize,
        #[arg(long, default_value_t = 3)]
        max_j: u32,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check that the pushforward to j + 1 preserves the instanton numbers
    Embedding(SweepArgs),
}

fn settle(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.max_window.is_some() {
        cfg.max_window = cli.max_window;
    }
    let (samples, seed) = match &cli.command {
        Command::Strata(a) | Command::Embedding(a) => (a.samples, a.seed),
        Command::Moduli { samples, seed, .. } => (*samples, *seed),
        _ => (None, None),
    };
    if let Some(n) = samples {
        cfg.samples = n;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn run(cli: &Cli, cfg: &RunConfig) -> Result<Output> {
    match &cli.command {
        Command::Curve { poly, j } => commands::curve(poly.get(), *j, cfg),
        Command::Bundle { poly, j } => commands::bundle(poly.get(), *j, cfg),
        Command::Classical { poly } => commands::classical(poly.get()),
        Command::Strata(a) => commands::strata(a.j, a.grid, cfg),
        Command::Tables { .. } => commands::tables(cfg),
        Command::Moduli { charge, max_j, .. } => commands::moduli(*charge, *max_j, cfg),
        Command::Embedding(a) => commands::embedding(a.j, a.grid, cfg),
    }
}

fn fail(kind: ErrorKind, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(match kind {
        ErrorKind::Input => EXIT_INPUT,
        ErrorKind::Solver => EXIT_SOLVER,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match settle(&cli) {
        Ok(c) => c,
        Err(e) => return fail(e.kind(), e),
    };
    let out = match run(&cli, &cfg) {
        Ok(o) => o,
        Err(e) => return fail(e.kind(), e),
    };

    let out_dir = match &cli.command {
        Command::Tables { out_dir } => out_dir.as_ref(),
        _ => None,
    };
    let stdout = match (cfg.format, out_dir) {
        (Format::Json, _) => out.json,
        (Format::Table, _) => out.text,
        (Format::Csv, Some(dir)) => {
            if let Err(e) = commands::write_csv_files(dir, &out.csv) {
                return fail(ErrorKind::Input, format!("{}: {e}", dir.display()));
            }
            String::new()
        }
        (Format::Csv, None) => {
            let parts: Vec<String> = out.csv.iter().map(|t| t.to_csv()).collect();
            parts.join("\n")
        }
    };
    let _ = std::io::stdout().write_all(stdout.as_bytes());

    match out.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::SolverIssue => ExitCode::from(EXIT_SOLVER),
        Status::TableMismatch => ExitCode::from(EXIT_MISMATCH),
    }
}
