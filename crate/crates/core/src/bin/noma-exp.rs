//! Experiment runner for secure two-user NOMA.
//!
//! Exit status: 0 on success, 1 on a configuration or I/O error, 2 when
//! `validate` finds an RMSE above its threshold.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::error;
use noma_secrecy::experiment::{self, ExperimentConfig, Mode, OutputFormat};

#[derive(Parser)]
#[command(name = "noma-exp", version, about = "Outage analysis and secrecy-fair power allocation sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic vs Monte Carlo outages with RMSE check
    Validate(Common),
    /// Outage curves and the min-max optimum along the sweep axis
    Sweep(Common),
    /// Every optimiser's allocation along the sweep axis
    Optimize(Common),
    /// Min-max objective against baseline allocations
    Compare(Common),
    /// Secrecy fairness against the pair-outage cap
    Tradeoff(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// TOML experiment configuration
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
}

fn execute(mode: Mode, args: Common) -> Result<bool, noma_secrecy::Error> {
    let mut cfg = match &args.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.samples {
        cfg.samples = n;
    }
    if let Some(f) = args.format {
        cfg.format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    if args.out.is_some() {
        cfg.out = args.out;
    }
    if let Some(m) = cfg.mode {
        if m != mode {
            log::warn!("config names mode '{m}', running '{mode}' as requested");
        }
    }
    let outcome = experiment::run(&cfg, mode)?;
    experiment::emit(&outcome.table, cfg.format, cfg.out.as_deref())?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (mode, args) = match cli.command {
        Command::Validate(a) => (Mode::Validate, a),
        Command::Sweep(a) => (Mode::Sweep, a),
        Command::Optimize(a) => (Mode::Optimize, a),
        Command::Compare(a) => (Mode::Compare, a),
        Command::Tradeoff(a) => (Mode::Tradeoff, a),
    };
    match execute(mode, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            error!("RMSE threshold exceeded");
            ExitCode::from(2)
        }
        Err(e) => {
            error!("{e}");
            ExitCode::from(1)
        }
    }
}
