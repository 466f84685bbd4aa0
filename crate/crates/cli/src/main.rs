//! `tlab`: generate families, run checks, build sequences and plot scenes.
//!
//! Exit codes: 0 holds or answer found, 1 fails with a counterexample,
//! 2 usage, I/O or schema error, 3 inconclusive, 4 builder stuck.

mod build;
mod check;
mod gen;
mod plot;
mod util;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Default seed when neither `--seed` nor `TRANSVERSAL_LAB_SEED` is given.
pub const DEFAULT_SEED: u64 = 0;
pub const SEED_ENV: &str = "TRANSVERSAL_LAB_SEED";

#[derive(Parser)]
#[command(name = "tlab", version, about = "Transversal and piercing experiments")]
struct Cli {
    /// Seed for every sampled check (overrides TRANSVERSAL_LAB_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated family or stream file.
    Gen(gen::GenArgs),
    /// Run a check and write a JSON report.
    Check(check::CheckArgs),
    /// Build a sequence from a stream file.
    Build(build::BuildArgs),
    /// Render a family, stream or sequence file as SVG.
    Plot(plot::PlotArgs),
}

fn seed(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| anyhow::anyhow!("{SEED_ENV} must be an unsigned integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    if let Some(n) = cli.threads {
        anyhow::ensure!(n > 0, "--threads must be positive");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let seed = seed(cli.seed)?;
    match cli.command {
        Command::Gen(a) => gen::run(a),
        Command::Check(a) => check::run(a, seed),
        Command::Build(a) => build::run(a),
        Command::Plot(a) => plot::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("tlab: {e:#}");
            ExitCode::from(2)
        }
    }
}
