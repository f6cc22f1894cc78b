use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use wfsm::selection::{negative_select, positive_select, Mode, Polarity};
use wfsm::{BiasTable, MatchingRule};

use crate::util::{read_lines, validate_strings, write_atomic};

fn parse_mode(s: &str) -> std::result::Result<Mode, wfsm::Error> {
    s.parse()
}

fn parse_polarity(s: &str) -> std::result::Result<Polarity, wfsm::Error> {
    s.parse()
}

#[derive(Args)]
pub struct BuildArgs {
    /// Training corpus, one string per line.
    #[arg(long)]
    train: PathBuf,
    /// Rule descriptor, e.g. contiguous:r=3,len=3,alphabet=abcdefghijklmnopqrstuvwxyz
    #[arg(long)]
    rule: String,
    /// weighted | unweighted
    #[arg(long, value_parser = parse_mode)]
    mode: Mode,
    /// positive | negative
    #[arg(long, value_parser = parse_polarity)]
    polarity: Polarity,
    /// Bias table CSV (negative weighted selection only).
    #[arg(long)]
    bias: Option<PathBuf>,
    /// Output repertoire file.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: BuildArgs) -> Result<()> {
    let rule: MatchingRule = args.rule.parse()?;
    let lines = read_lines(&args.train)?;
    let samples = validate_strings(&lines, &rule, "training file")?;
    let bias = match &args.bias {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read bias table {}", path.display()))?;
            Some(BiasTable::from_csv(&text)?)
        }
        None => None,
    };

    let repertoire = match args.polarity {
        Polarity::Positive => {
            if bias.is_some() {
                anyhow::bail!("--bias only applies to negative selection");
            }
            positive_select(&samples, &rule, args.mode)?
        }
        Polarity::Negative => negative_select(&samples, &rule, bias.as_ref(), args.mode)?,
    };

    let machine = repertoire.machine();
    let stats = machine.stats();
    let strings = machine.count_strings()?;
    write_atomic(&args.out, || Ok(repertoire.to_text().into_bytes()))?;
    println!("{stats} strings={strings}");
    Ok(())
}
