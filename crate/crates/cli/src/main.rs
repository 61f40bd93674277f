use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

mod commands;
mod config;
mod output;

use config::{Format, RunConfig};

/// Infinite square well toolkit: spectra, packet dynamics, Ehrenfest checks,
/// wall-distribution algebra and the finite-well limit.
#[derive(Parser, Debug)]
#[command(name = "boxwell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration; every field is optional.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output file (`evolve`: output directory).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Machine-readable output; omit for a human-readable table.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Residual threshold for `verify`.
    #[arg(long, global = true, value_name = "FLOAT")]
    threshold: Option<f64>,

    /// Level count for `eigen`, mode index for `symbolic`.
    #[arg(long, global = true, value_name = "INT")]
    n: Option<usize>,

    /// Override any config field, e.g. `--set well.length=2`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// First N energy levels and wavenumbers.
    Eigen,
    /// Write <p>(t), <x>(t) and <dV/dx>(t) series.
    Evolve,
    /// Compare d<p>/dt with -<dV/dx>; exits 1 if the residual exceeds the threshold.
    Verify,
    /// Print the wall-distribution derivation for mode n.
    Symbolic,
    /// Finite-well convergence study plus a grid quadrature check.
    Oracle,
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    }
    .with_overrides(&cli.overrides)?;
    if let Some(f) = cli.format {
        cfg.output.format = Some(f);
    }
    if let Some(p) = &cli.out {
        cfg.output.path = Some(p.clone());
    }
    if let Some(t) = cli.threshold {
        anyhow::ensure!(t >= 0.0, "--threshold must be non-negative, got {t}");
        cfg.threshold = t;
    }
    if let Some(n) = cli.n {
        match cli.command {
            Command::Eigen => cfg.eigen_count = n,
            Command::Symbolic => cfg.symbolic_n = n,
            other => anyhow::bail!("--n has no meaning for {other:?}"),
        }
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = resolve(cli)?;
    match cli.command {
        Command::Eigen => commands::eigen(&cfg).map(|_| true),
        Command::Evolve => commands::evolve(&cfg).map(|_| true),
        Command::Verify => commands::verify(&cfg),
        Command::Symbolic => commands::symbolic(&cfg),
        Command::Oracle => commands::oracle(&cfg).map(|_| true),
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().filter_map(|c| c.downcast_ref::<std::io::Error>()).any(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
