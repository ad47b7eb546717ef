//! `resilience`: run channel and sentinel experiments from JSON configs and
//! compare behaviors.
//!
//! Exit codes: 0 success, 2 config error, 3 I/O error, 4 invariant violation.

mod channel;
mod compare;
mod error;
mod output;
mod sentinel;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use resilience_core::fitness::FitVariant;

#[derive(Debug, Parser)]
#[command(
    name = "resilience",
    version,
    about = "Behavioral resilience simulator"
)]
struct Cli {
    /// Override the seed given in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Fit function: baseline, quadratic or plateau:W.
    #[arg(long, global = true, default_value = "baseline")]
    fit_variant: FitVariant,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run redundancy protocols over a simulated channel.
    Channel {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run the coal mine / miner / canary scenario.
    Sentinel {
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Also emit the supply/fit curve for a pool of N canaries.
        #[arg(long, value_name = "N")]
        curve: Option<usize>,
        /// Also run K seeds and report survival with and without canaries.
        #[arg(long, value_name = "K")]
        runs: Option<usize>,
    },
    /// Compare two behavior descriptors, or two cybernetic classes.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Treat both files as cybernetic classes.
        #[arg(long)]
        organs: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Channel { config, out } => channel::run(config, out, cli.seed, cli.fit_variant),
        Command::Sentinel {
            config,
            out,
            curve,
            runs,
        } => sentinel::run(sentinel::SentinelArgs {
            config,
            out,
            seed: cli.seed,
            curve: *curve,
            runs: *runs,
        }),
        Command::Compare { a, b, organs } => compare::run(a, b, *organs, cli.fit_variant),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("resilience: {e}");
            e.exit_code()
        }
    }
}
