//! Language anomaly detection on letter n-grams.
//!
//! Training strings are sampled from a corpus, their n-grams feed positive
//! selection, and test strings from a normal and an anomalous corpus are
//! scored by aggregating the scores of their own n-grams. The AUC treats the
//! normal-language strings as the class expected to score higher.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::experiments::{auc, run_rng, ExperimentResult, RunRecord};
use crate::machine::Alphabet;
use crate::selection::{positive_select, Mode, Repertoire};
use crate::{Error, MatchingRule, Rational, Result};

/// How a test string's n-gram scores combine into its string score.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregation {
    /// Mean n-gram score (length-normalized). The default.
    Mean,
    /// Plain sum; favours longer strings.
    Sum,
}

impl std::str::FromStr for Aggregation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Aggregation::Mean),
            "sum" => Ok(Aggregation::Sum),
            other => Err(Error::Config(format!("unknown aggregation {other:?}"))),
        }
    }
}

/// Every length-`n` window of every maximal alphabet run of every line,
/// lower-cased, with multiplicity and order preserved. Characters outside the
/// alphabet act as separators; runs shorter than `n` contribute nothing.
pub fn extract_ngrams<S: AsRef<str>>(lines: &[S], n: usize, alphabet: &Alphabet) -> Vec<String> {
    let mut out = Vec::new();
    for line in lines {
        let lowered = line.as_ref().to_lowercase();
        let mut run: Vec<char> = Vec::new();
        for c in lowered.chars().chain(std::iter::once(' ')) {
            if alphabet.contains(c) {
                run.push(c);
            } else {
                if run.len() >= n {
                    for w in run.windows(n) {
                        out.push(w.iter().collect());
                    }
                }
                run.clear();
            }
        }
    }
    out
}

/// Configuration of one (subsample size, mode) cell of the language study.
#[derive(Debug, Clone)]
pub struct LanguageConfig {
    pub train_path: PathBuf,
    pub normal_test_path: PathBuf,
    pub anomalous_test_path: PathBuf,
    /// n-gram length; must equal the rule's string length.
    pub ngram: usize,
    pub rule: MatchingRule,
    pub mode: Mode,
    pub train_subsample: usize,
    pub runs: u32,
    pub base_seed: u64,
    pub aggregation: Aggregation,
}

fn read_corpus(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::Config(format!("cannot read corpus {}: {e}", path.display()))
    })?;
    Ok(text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

impl LanguageConfig {
    fn validate(&self) -> Result<()> {
        if self.ngram == 0 {
            return Err(Error::Config("ngram length must be positive".into()));
        }
        if self.rule.len() != self.ngram {
            return Err(Error::Config(format!(
                "rule length {} does not match ngram length {}",
                self.rule.len(),
                self.ngram
            )));
        }
        if self.train_subsample == 0 || self.runs == 0 {
            return Err(Error::Config("subsample and runs must be positive".into()));
        }
        Ok(())
    }
}

/// Scores a test string: aggregate of its n-gram scores, zero when it has no
/// n-grams. Scores of repeated n-grams are cached in `memo`.
fn string_score(
    line: &str,
    rep: &Repertoire,
    config: &LanguageConfig,
    memo: &mut HashMap<String, Rational>,
) -> Result<Rational> {
    let grams = extract_ngrams(&[line], config.ngram, config.rule.alphabet());
    if grams.is_empty() {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for gram in &grams {
        let score = match memo.get(gram) {
            Some(cached) => cached.clone(),
            None => {
                let s = rep.score(gram)?.to_rational();
                memo.insert(gram.clone(), s.clone());
                s
            }
        };
        total = &total + &score;
    }
    match config.aggregation {
        Aggregation::Sum => Ok(total),
        Aggregation::Mean => Ok(&total / &Rational::from(grams.len() as u64)),
    }
}

/// The three corpora of a language study, loaded once and shared by runs.
#[derive(Debug, Clone)]
pub struct LanguageData {
    train: Vec<String>,
    normal: Vec<String>,
    anomalous: Vec<String>,
}

impl LanguageData {
    pub fn load(config: &LanguageConfig) -> Result<Self> {
        config.validate()?;
        let data = LanguageData {
            train: read_corpus(&config.train_path)?,
            normal: read_corpus(&config.normal_test_path)?,
            anomalous: read_corpus(&config.anomalous_test_path)?,
        };
        if config.train_subsample > data.train.len() {
            return Err(Error::Config(format!(
                "subsample {} exceeds corpus size {}",
                config.train_subsample,
                data.train.len()
            )));
        }
        Ok(data)
    }
}

/// One repetition: subsample training strings without replacement, select on
/// their n-grams, score both test corpora in full.
pub fn run_language_single(
    data: &LanguageData,
    config: &LanguageConfig,
    run: u32,
) -> Result<RunRecord> {
    let mut rng = run_rng(config.base_seed, run);
    let chosen = rand::seq::index::sample(&mut rng, data.train.len(), config.train_subsample);
    let sample: Vec<&String> = chosen.iter().map(|i| &data.train[i]).collect();
    let grams = extract_ngrams(&sample, config.ngram, config.rule.alphabet());
    if grams.is_empty() {
        return Err(Error::EmptyNgramStream);
    }
    let rep = positive_select(&grams, &config.rule, config.mode)?;

    let mut memo: HashMap<String, Rational> = HashMap::new();
    let normal_scores = data
        .normal
        .iter()
        .map(|l| string_score(l, &rep, config, &mut memo))
        .collect::<Result<Vec<_>>>()?;
    let anomalous_scores = data
        .anomalous
        .iter()
        .map(|l| string_score(l, &rep, config, &mut memo))
        .collect::<Result<Vec<_>>>()?;
    Ok(RunRecord {
        run,
        seed: crate::experiments::derive_seed(config.base_seed, run),
        auc: auc(&anomalous_scores, &normal_scores)?,
    })
}

/// Runs the language study over all configured repetitions.
pub fn run_language(config: &LanguageConfig) -> Result<ExperimentResult> {
    let data = LanguageData::load(config)?;
    let runs = (0..config.runs)
        .map(|run| run_language_single(&data, config, run))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentResult::from_runs(runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn letters() -> Alphabet {
        Alphabet::new("abcdefghijklmnopqrstuvwxyz").unwrap()
    }

    #[test]
    fn ngram_extraction_examples() {
        let alpha = letters();
        assert_eq!(extract_ngrams(&["Abc"], 3, &alpha), vec!["abc"]);
        assert_eq!(extract_ngrams(&["ab cde"], 3, &alpha), vec!["cde"]);
        assert_eq!(extract_ngrams(&["aaaa"], 3, &alpha), vec!["aaa", "aaa"]);
        assert_eq!(
            extract_ngrams(&["no-such luck!"], 2, &alpha),
            vec!["no", "su", "uc", "ch", "lu", "uc", "ck"]
        );
        assert!(extract_ngrams(&["a b"], 2, &alpha).is_empty());
    }

    fn write_corpus(dir: &Path, name: &str, lines: &[&str]) -> PathBuf {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
        path
    }

    fn config_for(dir: &Path, mode: Mode) -> LanguageConfig {
        let train = write_corpus(
            dir,
            "train.txt",
            &["banana", "bandana", "cabana", "banal", "anna", "nanna"],
        );
        let normal = write_corpus(dir, "normal.txt", &["banana", "cabana"]);
        let anomalous = write_corpus(dir, "anomalous.txt", &["zzzzz", "qqqqq"]);
        LanguageConfig {
            train_path: train,
            normal_test_path: normal,
            anomalous_test_path: anomalous,
            ngram: 3,
            rule: MatchingRule::contiguous(letters(), 3, 3).unwrap(),
            mode,
            train_subsample: 4,
            runs: 3,
            base_seed: 5,
            aggregation: Aggregation::Mean,
        }
    }

    #[test]
    fn separates_obviously_different_corpora() {
        let dir = tempfile::tempdir().unwrap();
        let config = config_for(dir.path(), Mode::Weighted);
        let result = run_language(&config).unwrap();
        assert_eq!(result.mean_auc, 1.0);
        // Deterministic under the same seed.
        assert_eq!(run_language(&config).unwrap(), result);
    }

    #[test]
    fn test_strings_with_unseen_ngrams_score_zero() {
        let dir = tempfile::tempdir().unwrap();
        let config = config_for(dir.path(), Mode::Weighted);
        let train: Vec<String> = vec!["banana".into(); 10];
        let grams = extract_ngrams(&train, 3, &letters());
        let rep = positive_select(&grams, &config.rule, Mode::Weighted).unwrap();
        let mut memo = HashMap::new();
        let score = string_score("zzzq", &rep, &config, &mut memo).unwrap();
        assert!(score.is_zero());
        let known = string_score("banana", &rep, &config, &mut memo).unwrap();
        assert!(known > Rational::zero());
    }

    #[test]
    fn oversized_subsample_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = config_for(dir.path(), Mode::Weighted);
        config.train_subsample = 100;
        assert!(run_language(&config).is_err());
    }

    #[test]
    fn missing_corpus_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = config_for(dir.path(), Mode::Weighted);
        config.train_path = dir.path().join("no-such-file.txt");
        let err = run_language(&config).unwrap_err();
        assert!(err.to_string().contains("no-such-file"));
    }
}
