use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use wfsm::selection::Repertoire;

use crate::util::{decimal_12, read_lines, validate_strings, write_atomic};

#[derive(Args)]
pub struct ScoreArgs {
    /// Persisted repertoire file.
    #[arg(long)]
    rep: PathBuf,
    /// Test corpus, one string per line.
    #[arg(long)]
    test: PathBuf,
    /// Output CSV: string,score,score_decimal.
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: ScoreArgs) -> Result<()> {
    let text = fs::read_to_string(&args.rep)
        .with_context(|| format!("cannot read repertoire {}", args.rep.display()))?;
    let repertoire = Repertoire::from_text(&text)
        .with_context(|| format!("invalid repertoire file {}", args.rep.display()))?;
    let lines = read_lines(&args.test)?;
    let tests = validate_strings(&lines, repertoire.rule(), "test file")?;
    let report = repertoire.score_batch(&tests)?;

    write_atomic(&args.out, || {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["string", "score", "score_decimal"])?;
        for (string, score) in &report.entries {
            w.write_record([
                string.as_str(),
                &score.to_string(),
                &decimal_12(&score.to_rational()),
            ])?;
        }
        Ok(w.into_inner()?)
    })?;
    println!("scored {} strings", report.entries.len());
    Ok(())
}
