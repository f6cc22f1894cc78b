//! `wfsm` — build, persist and score selection repertoires, inspect machine
//! files, and run the benchmark studies with seeded, reproducible output.

mod build;
mod experiment;
mod fsm;
mod score;
mod util;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "wfsm",
    version,
    about = "Weighted finite-state repertoire engine",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a repertoire from a training corpus and write it to a file.
    Build(build::BuildArgs),
    /// Score a test corpus against a persisted repertoire.
    Score(score::ScoreArgs),
    /// Run a study and write per-run and aggregate CSVs.
    #[command(subcommand)]
    Experiment(experiment::ExperimentCmd),
    /// Inspect a persisted machine file.
    #[command(subcommand)]
    Fsm(fsm::FsmCmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => build::run(args),
        Command::Score(args) => score::run(args),
        Command::Experiment(cmd) => experiment::run(cmd),
        Command::Fsm(cmd) => fsm::run(cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
