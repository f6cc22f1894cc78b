use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Subcommand;
use wfsm::Wfsm;

#[derive(Subcommand)]
pub enum FsmCmd {
    /// Print state and transition counts.
    Stats { path: PathBuf },
    /// Enumerate (string, weight) pairs of a small machine.
    Print {
        path: PathBuf,
        /// Refuse to enumerate languages larger than this.
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
    },
    /// Validate all machine invariants.
    Check { path: PathBuf },
}

fn load(path: &PathBuf) -> Result<Wfsm> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    // Repertoire files embed a machine after a 4-line header; accept both.
    let machine_text = match text.strip_prefix("repertoire v1\n") {
        Some(_) => text
            .splitn(5, '\n')
            .nth(4)
            .context("repertoire file has no machine section")?,
        None => &text,
    };
    Wfsm::from_text(machine_text).with_context(|| format!("invalid machine {}", path.display()))
}

pub fn run(cmd: FsmCmd) -> Result<()> {
    match cmd {
        FsmCmd::Stats { path } => {
            let m = load(&path)?;
            println!("{}", m.stats());
            println!("strings={}", m.count_strings()?);
            let (num_digits, den_digits) = m.weight_digits();
            println!("max_weight_digits={num_digits}/{den_digits}");
        }
        FsmCmd::Print { path, limit } => {
            let m = load(&path)?;
            for (s, w) in m.enumerate(limit)? {
                println!("{s} {w}");
            }
        }
        FsmCmd::Check { path } => {
            load(&path)?;
            println!("ok");
        }
    }
    Ok(())
}
