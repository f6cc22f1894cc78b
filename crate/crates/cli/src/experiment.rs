use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use rayon::prelude::*;
use wfsm::experiments::{
    merge_benchmark, run_language_single, run_noisy_single, witness_threshold, Aggregation,
    ExperimentResult, LanguageConfig, LanguageData, MergeOrder, NoisyConfig, RunRecord,
    WeightMode,
};
use wfsm::machine::Alphabet;
use wfsm::selection::Mode;
use wfsm::MatchingRule;

use crate::util::write_atomic;

#[derive(Subcommand)]
pub enum ExperimentCmd {
    /// Noisy bitstring classification study.
    Noisy(NoisyArgs),
    /// Language anomaly detection study on letter n-grams.
    Language(LanguageArgs),
    /// Merge benchmark: build the full universe machine by repeated union.
    MergeBench(MergeArgs),
}

/// Which selection modes to run.
#[derive(Clone, Copy, PartialEq, Eq)]
enum ModeChoice {
    Both,
    One(Mode),
}

fn parse_mode_choice(s: &str) -> Result<ModeChoice, wfsm::Error> {
    match s {
        "both" => Ok(ModeChoice::Both),
        other => Ok(ModeChoice::One(other.parse()?)),
    }
}

impl ModeChoice {
    fn modes(self) -> Vec<Mode> {
        match self {
            ModeChoice::Both => vec![Mode::Weighted, Mode::Unweighted],
            ModeChoice::One(m) => vec![m],
        }
    }
}

fn parse_aggregation(s: &str) -> Result<Aggregation, wfsm::Error> {
    s.parse()
}

#[derive(Args)]
pub struct NoisyArgs {
    /// Bitstring length.
    #[arg(long, default_value_t = 8)]
    len: usize,
    /// Mutation rate in [0,1].
    #[arg(long, default_value_t = 0.6)]
    mu: f64,
    /// Rule descriptor; len/alphabet default to the study's (e.g. contiguous:r=5).
    #[arg(long, default_value = "contiguous:r=5")]
    rule: String,
    /// Training set sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "10,50,250,1000,2000")]
    train_sizes: Vec<usize>,
    /// Test samples per class.
    #[arg(long, default_value_t = 100)]
    test_size: usize,
    #[arg(long, default_value_t = 20)]
    runs: u32,
    /// both | weighted | unweighted
    #[arg(long, default_value = "both", value_parser = parse_mode_choice)]
    mode: ModeChoice,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Per-run CSV output.
    #[arg(long, default_value = "noisy_runs.csv")]
    out: PathBuf,
    /// Aggregate CSV output.
    #[arg(long, default_value = "noisy_agg.csv")]
    aggregate_out: PathBuf,
    /// Worker threads for independent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
pub struct LanguageArgs {
    /// Training corpus, one string per line.
    #[arg(long)]
    train: PathBuf,
    /// Normal-class test corpus.
    #[arg(long)]
    normal_test: PathBuf,
    /// Anomalous-class test corpus.
    #[arg(long)]
    anomalous_test: PathBuf,
    /// n-gram length.
    #[arg(long, default_value_t = 3)]
    ngram: usize,
    /// Rule descriptor; len defaults to the n-gram length.
    #[arg(long, default_value = "contiguous:r=3")]
    rule: String,
    /// Universe alphabet for n-gram extraction.
    #[arg(long, default_value = "abcdefghijklmnopqrstuvwxyz")]
    alphabet: String,
    /// Training subsample sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,4000")]
    train_sizes: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    runs: u32,
    /// both | weighted | unweighted
    #[arg(long, default_value = "both", value_parser = parse_mode_choice)]
    mode: ModeChoice,
    /// mean | sum: how a string aggregates its n-gram scores.
    #[arg(long, default_value = "mean", value_parser = parse_aggregation)]
    aggregation: Aggregation,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "language_runs.csv")]
    out: PathBuf,
    #[arg(long, default_value = "language_agg.csv")]
    aggregate_out: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
pub struct MergeArgs {
    /// Universe alphabet, e.g. 012.
    #[arg(long)]
    alphabet: String,
    /// String length.
    #[arg(long)]
    len: usize,
    /// exact | float64
    #[arg(long, default_value = "exact")]
    weights: String,
    /// binary-tree | sequential
    #[arg(long, default_value = "binary-tree")]
    order: String,
    #[arg(long, default_value = "merge_trace.csv")]
    out: PathBuf,
}

pub fn run(cmd: ExperimentCmd) -> Result<()> {
    match cmd {
        ExperimentCmd::Noisy(args) => run_noisy_cmd(args),
        ExperimentCmd::Language(args) => run_language_cmd(args),
        ExperimentCmd::MergeBench(args) => run_merge_cmd(args),
    }
}

const RUN_HEADER: [&str; 9] = [
    "experiment",
    "run",
    "seed",
    "mode",
    "rule",
    "param_n",
    "param_mu",
    "train_size",
    "auc",
];

const AGG_HEADER: [&str; 8] = [
    "experiment",
    "mode",
    "rule",
    "param_n",
    "param_mu",
    "train_size",
    "mean_auc",
    "sem",
];

struct Cell {
    mode: Mode,
    train_size: usize,
}

/// Runs `runs` repetitions of every (mode, size) cell, possibly in parallel;
/// results are ordered by cell then run, so parallel and serial output are
/// identical.
fn run_cells<F>(cells: &[Cell], runs: u32, jobs: usize, run_one: F) -> Result<Vec<ExperimentResult>>
where
    F: Fn(&Cell, u32) -> wfsm::Result<RunRecord> + Sync,
{
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let tasks: Vec<(usize, u32)> = (0..cells.len())
        .flat_map(|c| (0..runs).map(move |r| (c, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .context("building worker pool")?;
    let mut records: Vec<(usize, RunRecord)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(c, r)| run_one(&cells[c], r).map(|rec| (c, rec)))
            .collect::<wfsm::Result<Vec<_>>>()
    })?;
    records.sort_by_key(|(c, rec)| (*c, rec.run));

    let mut per_cell: Vec<Vec<RunRecord>> = (0..cells.len()).map(|_| Vec::new()).collect();
    for (c, rec) in records {
        per_cell[c].push(rec);
    }
    Ok(per_cell.into_iter().map(ExperimentResult::from_runs).collect())
}

fn write_run_csv(
    path: &std::path::Path,
    experiment: &str,
    rule: &MatchingRule,
    param_n: usize,
    param_mu: Option<f64>,
    cells: &[Cell],
    results: &[ExperimentResult],
) -> Result<()> {
    write_atomic(path, || {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(RUN_HEADER)?;
        for (cell, result) in cells.iter().zip(results) {
            for rec in &result.runs {
                w.write_record([
                    experiment,
                    &rec.run.to_string(),
                    &rec.seed.to_string(),
                    &cell.mode.to_string(),
                    &rule.to_string(),
                    &param_n.to_string(),
                    &param_mu.map(|m| m.to_string()).unwrap_or_default(),
                    &cell.train_size.to_string(),
                    &rec.auc.to_string(),
                ])?;
            }
        }
        Ok(w.into_inner()?)
    })
}

fn write_agg_csv(
    path: &std::path::Path,
    experiment: &str,
    rule: &MatchingRule,
    param_n: usize,
    param_mu: Option<f64>,
    cells: &[Cell],
    results: &[ExperimentResult],
) -> Result<()> {
    write_atomic(path, || {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(AGG_HEADER)?;
        for (cell, result) in cells.iter().zip(results) {
            w.write_record([
                experiment,
                &cell.mode.to_string(),
                &rule.to_string(),
                &param_n.to_string(),
                &param_mu.map(|m| m.to_string()).unwrap_or_default(),
                &cell.train_size.to_string(),
                &result.mean_auc.to_string(),
                &result.sem.to_string(),
            ])?;
        }
        Ok(w.into_inner()?)
    })
}

fn run_noisy_cmd(args: NoisyArgs) -> Result<()> {
    let rule = MatchingRule::parse_with_defaults(&args.rule, Some(args.len), Some("01"))?;
    if args.train_sizes.is_empty() {
        bail!("--train-sizes must not be empty");
    }
    let cells: Vec<Cell> = args
        .mode
        .modes()
        .into_iter()
        .flat_map(|mode| {
            args.train_sizes
                .iter()
                .map(move |&train_size| Cell { mode, train_size })
        })
        .collect();

    let results = run_cells(&cells, args.runs, args.jobs, |cell, run| {
        let config = NoisyConfig {
            len: args.len,
            mu: args.mu,
            rule: rule.clone(),
            mode: cell.mode,
            train_size: cell.train_size,
            test_size: args.test_size,
            runs: args.runs,
            base_seed: args.seed,
        };
        run_noisy_single(&config, run)
    })?;

    write_run_csv(&args.out, "noisy", &rule, args.len, Some(args.mu), &cells, &results)?;
    write_agg_csv(
        &args.aggregate_out,
        "noisy",
        &rule,
        args.len,
        Some(args.mu),
        &cells,
        &results,
    )?;

    for (cell, result) in cells.iter().zip(&results) {
        println!(
            "noisy mode={} train_size={} mean_auc={:.4} sem={:.4}",
            cell.mode, cell.train_size, result.mean_auc, result.sem
        );
    }
    println!(
        "witness_threshold N*(mu={}) = {:.2}",
        args.mu,
        witness_threshold(args.len, args.mu)
    );
    println!(
        "wrote {} and {}",
        args.out.display(),
        args.aggregate_out.display()
    );
    Ok(())
}

fn run_language_cmd(args: LanguageArgs) -> Result<()> {
    let alphabet = Alphabet::new(&args.alphabet)?;
    let rule = MatchingRule::parse_with_defaults(
        &args.rule,
        Some(args.ngram),
        Some(&alphabet.to_string()),
    )?;
    if args.train_sizes.is_empty() {
        bail!("--train-sizes must not be empty");
    }
    let cells: Vec<Cell> = args
        .mode
        .modes()
        .into_iter()
        .flat_map(|mode| {
            args.train_sizes
                .iter()
                .map(move |&train_size| Cell { mode, train_size })
        })
        .collect();

    let config_for = |cell: &Cell| LanguageConfig {
        train_path: args.train.clone(),
        normal_test_path: args.normal_test.clone(),
        anomalous_test_path: args.anomalous_test.clone(),
        ngram: args.ngram,
        rule: rule.clone(),
        mode: cell.mode,
        train_subsample: cell.train_size,
        runs: args.runs,
        base_seed: args.seed,
        aggregation: args.aggregation,
    };

    // Corpora are shared; load once and validate against the largest cell.
    let max_cell = Cell {
        mode: Mode::Weighted,
        train_size: *args.train_sizes.iter().max().unwrap(),
    };
    let data = LanguageData::load(&config_for(&max_cell))?;

    let results = run_cells(&cells, args.runs, args.jobs, |cell, run| {
        run_language_single(&data, &config_for(cell), run)
    })?;

    write_run_csv(&args.out, "language", &rule, args.ngram, None, &cells, &results)?;
    write_agg_csv(
        &args.aggregate_out,
        "language",
        &rule,
        args.ngram,
        None,
        &cells,
        &results,
    )?;

    for (cell, result) in cells.iter().zip(&results) {
        println!(
            "language mode={} train_size={} mean_auc={:.4} sem={:.4}",
            cell.mode, cell.train_size, result.mean_auc, result.sem
        );
    }
    println!(
        "wrote {} and {}",
        args.out.display(),
        args.aggregate_out.display()
    );
    Ok(())
}

fn run_merge_cmd(args: MergeArgs) -> Result<()> {
    let alphabet = Alphabet::new(&args.alphabet)?;
    let mode: WeightMode = args.weights.parse()?;
    let order: MergeOrder = args.order.parse()?;
    let trace = merge_benchmark(&alphabet, args.len, mode, order)?;

    write_atomic(&args.out, || {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["merge_step", "num_strings", "states", "transitions", "weight_mode"])?;
        for step in &trace {
            w.write_record([
                &step.step.to_string(),
                &step.num_strings.to_string(),
                &step.states.to_string(),
                &step.transitions.to_string(),
                &mode.to_string(),
            ])?;
        }
        Ok(w.into_inner()?)
    })?;

    let last = trace.last().expect("benchmark produced no steps");
    println!(
        "final states={} transitions={} strings={}",
        last.states, last.transitions, last.num_strings
    );
    println!("wrote {}", args.out.display());
    Ok(())
}
