//! The noisy bitstring problem.
//!
//! Samples are drawn around the centers `0^len` (normal) and `1^len`
//! (anomalous): draw `x` from a geometric distribution with parameter
//! `1 - mu`, flip `min(x, len)` distinct positions of the center. A positive
//! selection repertoire trained on normal samples scores both test classes
//! and the separation is measured by AUC.

use num_bigint::BigInt;
use num_integer::binomial;
use rand::Rng;

use crate::experiments::{auc, run_rng, ExperimentResult, RunRecord};
use crate::machine::Alphabet;
use crate::selection::{positive_select, Mode, Score};
use crate::{Error, MatchingRule, Rational, Result};

/// Draws from the geometric distribution with success parameter `1 - mu`
/// supported on 0, 1, 2, ... (`P(k) = (1-mu) * mu^k`). `mu = 1` never
/// terminates and returns a sentinel the caller clamps to the string length.
pub fn geometric_draw<R: Rng>(mu: f64, rng: &mut R) -> u64 {
    if mu >= 1.0 {
        return u64::MAX;
    }
    let mut k = 0u64;
    while rng.random::<f64>() < mu {
        k += 1;
    }
    k
}

/// Flips `min(geometric_draw(mu), len)` distinct random positions of `center`.
pub fn sample_noisy<R: Rng>(center: &str, mu: f64, rng: &mut R) -> String {
    let mut bits: Vec<char> = center.chars().collect();
    debug_assert!(bits.iter().all(|&c| c == '0' || c == '1'));
    let draws = geometric_draw(mu, rng).min(bits.len() as u64) as usize;
    for idx in rand::seq::index::sample(rng, bits.len(), draws) {
        bits[idx] = if bits[idx] == '0' { '1' } else { '0' };
    }
    bits.into_iter().collect()
}

/// Exact probability that the noisy draw around `center` produces `x`.
///
/// With `h` the Hamming distance: `(1-mu) * mu^h / C(len, h)` for `h < len`,
/// and `mu^len` for `h = len` (the geometric tail mass).
pub fn membership_prob(center: &str, mu: &Rational, x: &str) -> Result<Rational> {
    let c: Vec<char> = center.chars().collect();
    let xs: Vec<char> = x.chars().collect();
    if c.len() != xs.len() {
        return Err(Error::BadStringLength {
            string: x.to_string(),
            got: xs.len(),
            expected: c.len(),
        });
    }
    let len = c.len();
    let h = c.iter().zip(&xs).filter(|(a, b)| a != b).count();
    if h == len {
        return Ok(mu.pow(len as u32));
    }
    let choices = binomial(BigInt::from(len), BigInt::from(h));
    let p = &(&Rational::one() - mu) * &mu.pow(h as u32);
    p.checked_div(&Rational::from_big(choices, BigInt::from(1))?)
        .ok_or(Error::DivisionByZero)
}

/// `N*(mu)`: the training-set size at which the expected number of samples
/// with a majority of foreign bits reaches 1. Reported alongside the noisy
/// study as the scale where unweighted selection is expected to break down.
pub fn witness_threshold(len: usize, mu: f64) -> f64 {
    // P(hamming > len/2) under the clamped geometric flip count.
    let majority = len / 2 + 1;
    let mut p = mu.powi(len as i32);
    for h in majority..len {
        p += (1.0 - mu) * mu.powi(h as i32);
    }
    1.0 / p
}

/// Configuration of one (train size, mode) cell of the noisy study.
#[derive(Debug, Clone)]
pub struct NoisyConfig {
    pub len: usize,
    pub mu: f64,
    pub rule: MatchingRule,
    pub mode: Mode,
    pub train_size: usize,
    /// Test samples per class.
    pub test_size: usize,
    pub runs: u32,
    pub base_seed: u64,
}

impl NoisyConfig {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::Config(format!("mu must be in [0,1], got {}", self.mu)));
        }
        if self.train_size == 0 || self.test_size == 0 || self.runs == 0 {
            return Err(Error::Config(
                "train size, test size and runs must be positive".into(),
            ));
        }
        if self.rule.len() != self.len {
            return Err(Error::Config(format!(
                "rule length {} does not match string length {}",
                self.rule.len(),
                self.len
            )));
        }
        if self.rule.alphabet() != &Alphabet::new("01")? {
            return Err(Error::Config("noisy study runs over the alphabet 01".into()));
        }
        Ok(())
    }
}

/// One repetition of the noisy study: train on noisy normal samples, score
/// fresh normal and anomalous samples, compute the AUC with the normal class
/// expected to score higher. Runs are independent given `(base_seed, run)`.
pub fn run_noisy_single(config: &NoisyConfig, run: u32) -> Result<RunRecord> {
    config.validate()?;
    let normal_center: String = "0".repeat(config.len);
    let anomalous_center: String = "1".repeat(config.len);
    let mut rng = run_rng(config.base_seed, run);
    let train: Vec<String> = (0..config.train_size)
        .map(|_| sample_noisy(&normal_center, config.mu, &mut rng))
        .collect();
    let normal_tests: Vec<String> = (0..config.test_size)
        .map(|_| sample_noisy(&normal_center, config.mu, &mut rng))
        .collect();
    let anomalous_tests: Vec<String> = (0..config.test_size)
        .map(|_| sample_noisy(&anomalous_center, config.mu, &mut rng))
        .collect();

    let rep = positive_select(&train, &config.rule, config.mode)?;
    // Test samples repeat a lot around the centers; score each distinct
    // string once.
    let mut memo: std::collections::HashMap<String, Score> = std::collections::HashMap::new();
    let mut score_all = |tests: &[String]| -> Result<Vec<Score>> {
        tests
            .iter()
            .map(|t| match memo.get(t) {
                Some(s) => Ok(s.clone()),
                None => {
                    let s = rep.score(t)?;
                    memo.insert(t.clone(), s.clone());
                    Ok(s)
                }
            })
            .collect()
    };
    let normal_scores = score_all(&normal_tests)?;
    let anomalous_scores = score_all(&anomalous_tests)?;
    Ok(RunRecord {
        run,
        seed: crate::experiments::derive_seed(config.base_seed, run),
        auc: auc(&anomalous_scores, &normal_scores)?,
    })
}

/// Runs the noisy bitstring study over all configured repetitions.
pub fn run_noisy(config: &NoisyConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let runs = (0..config.runs)
        .map(|run| run_noisy_single(config, run))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult::from_runs(runs))
}
