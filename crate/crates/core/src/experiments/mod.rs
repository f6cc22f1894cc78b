//! The empirical studies: noisy bitstring classification, language anomaly
//! detection, and the merge benchmark, all seeded and reproducible.
//!
//! Every study runs `runs` independent repetitions. Run `i` draws its
//! randomness from a generator derived from `(base_seed, i)`, so runs can be
//! executed in any order (or in parallel) with identical results.

mod auc;
mod language;
mod merge;
mod noisy;

pub use auc::auc;
pub use language::{
    extract_ngrams, run_language, run_language_single, Aggregation, LanguageConfig, LanguageData,
};
pub use merge::{merge_benchmark, MergeOrder, MergeStep, WeightMode};
pub use noisy::{
    geometric_draw, membership_prob, run_noisy, run_noisy_single, sample_noisy,
    witness_threshold, NoisyConfig,
};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One repetition of a study.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub run: u32,
    pub seed: u64,
    pub auc: f64,
}

/// Per-run records plus their aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub runs: Vec<RunRecord>,
    pub mean_auc: f64,
    pub sem: f64,
}

impl ExperimentResult {
    pub fn from_runs(runs: Vec<RunRecord>) -> Self {
        let n = runs.len();
        let mean = runs.iter().map(|r| r.auc).sum::<f64>() / n as f64;
        let sem = if n < 2 {
            0.0
        } else {
            let var = runs.iter().map(|r| (r.auc - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            var.sqrt() / (n as f64).sqrt()
        };
        ExperimentResult {
            runs,
            mean_auc: mean,
            sem,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The seed of run `run` under `base_seed`.
pub fn derive_seed(base_seed: u64, run: u32) -> u64 {
    splitmix64(base_seed ^ splitmix64(u64::from(run).wrapping_add(1)))
}

/// Private generator for one run.
pub(crate) fn run_rng(base_seed: u64, run: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base_seed, run))
}
