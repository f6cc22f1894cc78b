//! Positive and negative selection, weighted and unweighted, plus scoring.
//!
//! Positive selection keeps exactly the detectors that recognize at least one
//! training string; negative selection keeps exactly those that recognize
//! none. In weighted positive mode each detector's weight is the number of
//! training samples it recognizes (multiplicity counts); in weighted negative
//! mode detectors carry a pre-existing bias weight, unit by default. Scores
//! sum the weights of the detectors recognizing a test string.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::machine::Wfsm;
use crate::matching::{BiasTable, MatchingRule};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Weighted,
    Unweighted,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weighted => "weighted",
            Mode::Unweighted => "unweighted",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weighted" => Ok(Mode::Weighted),
            "unweighted" => Ok(Mode::Unweighted),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        })
    }
}

impl FromStr for Polarity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            other => Err(Error::Config(format!("unknown polarity {other:?}"))),
        }
    }
}

/// A selected detector set: the machine holding the detectors (with weights),
/// the rule they match under, and how they were selected.
#[derive(Debug, Clone, PartialEq)]
pub struct Repertoire {
    machine: Wfsm,
    rule: MatchingRule,
    mode: Mode,
    polarity: Polarity,
}

/// A score: detector count in unweighted mode, summed detector weight in
/// weighted mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Score {
    Count(u64),
    Weight(Rational),
}

impl Score {
    pub fn to_rational(&self) -> Rational {
        match self {
            Score::Count(n) => Rational::from(*n),
            Score::Weight(w) => w.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Score::Count(n) => *n == 0,
            Score::Weight(w) => w.is_zero(),
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Score::Count(a), Score::Count(b)) => a.cmp(b),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Count(n) => write!(f, "{n}"),
            Score::Weight(w) => write!(f, "{w}"),
        }
    }
}

/// Scores for a batch of test strings, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub entries: Vec<(String, Score)>,
}

/// Builds the union of the co-pattern machines of the distinct samples.
/// In weighted mode each co-pattern is scaled by the sample's multiplicity
/// first, so a detector's weight ends up being the number of samples it
/// recognizes.
fn union_of_patterns(samples: &[String], rule: &MatchingRule, weighted: bool) -> Result<Wfsm> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut multiplicity: BTreeMap<&str, u64> = BTreeMap::new();
    for s in samples {
        *multiplicity.entry(s.as_str()).or_insert(0) += 1;
    }
    let mut machines = Vec::with_capacity(multiplicity.len());
    for (s, count) in multiplicity {
        let m = rule.co_pattern(s)?;
        if weighted && count > 1 {
            machines.push(m.scale(&Rational::from(count))?);
        } else {
            machines.push(m);
        }
    }
    Wfsm::union_all(machines)
}

/// Maximal positively selected repertoire for the training sequence.
pub fn positive_select(samples: &[String], rule: &MatchingRule, mode: Mode) -> Result<Repertoire> {
    let union = union_of_patterns(samples, rule, mode == Mode::Weighted)?;
    let machine = match mode {
        Mode::Weighted => union,
        Mode::Unweighted => union.support(),
    };
    Ok(Repertoire {
        machine,
        rule: rule.clone(),
        mode,
        polarity: Polarity::Positive,
    })
}

/// Maximal negatively selected repertoire: the universe minus every detector
/// recognizing a training string. Weighted mode carries the bias weights
/// (unit when no bias is supplied); unweighted mode forbids a bias.
pub fn negative_select(
    samples: &[String],
    rule: &MatchingRule,
    bias: Option<&BiasTable>,
    mode: Mode,
) -> Result<Repertoire> {
    if mode == Mode::Unweighted && bias.is_some() {
        return Err(Error::Config(
            "a bias table requires weighted mode".into(),
        ));
    }
    let matched = union_of_patterns(samples, rule, false)?;
    let universe = rule.universe(bias)?;
    let machine = universe.difference(&matched)?;
    Ok(Repertoire {
        machine,
        rule: rule.clone(),
        mode,
        polarity: Polarity::Negative,
    })
}

impl Repertoire {
    pub fn machine(&self) -> &Wfsm {
        &self.machine
    }

    pub fn rule(&self) -> &MatchingRule {
        &self.rule
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    /// Summed weight (weighted) or count (unweighted) of the repertoire's
    /// detectors recognizing `t`.
    pub fn score(&self, t: &str) -> Result<Score> {
        let pattern = self.rule.co_pattern(t)?;
        let hit = self.machine.intersect(&pattern)?;
        Ok(match self.mode {
            Mode::Weighted => Score::Weight(hit.total_weight()),
            Mode::Unweighted => Score::Count(hit.count_strings()?),
        })
    }

    pub fn score_batch<S: AsRef<str>>(&self, tests: &[S]) -> Result<ScoreReport> {
        let entries = tests
            .iter()
            .map(|t| Ok((t.as_ref().to_string(), self.score(t.as_ref())?)))
            .collect::<Result<_>>()?;
        Ok(ScoreReport { entries })
    }

    /// Single-file persistent form: a short header naming rule, mode and
    /// polarity, followed by the machine text format.
    pub fn to_text(&self) -> String {
        format!(
            "repertoire v1\nrule {}\nmode {}\npolarity {}\n{}",
            self.rule,
            self.mode,
            self.polarity,
            self.machine.to_text()
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.splitn(5, '\n');
        let bad = |reason: &str| Error::BadRepertoireFile(reason.to_string());
        if lines.next() != Some("repertoire v1") {
            return Err(bad("expected header `repertoire v1`"));
        }
        let rule_line = lines.next().ok_or_else(|| bad("missing rule line"))?;
        let rule: MatchingRule = rule_line
            .strip_prefix("rule ")
            .ok_or_else(|| bad("missing rule line"))?
            .parse()?;
        let mode_line = lines.next().ok_or_else(|| bad("missing mode line"))?;
        let mode: Mode = mode_line
            .strip_prefix("mode ")
            .ok_or_else(|| bad("missing mode line"))?
            .parse()?;
        let polarity_line = lines.next().ok_or_else(|| bad("missing polarity line"))?;
        let polarity: Polarity = polarity_line
            .strip_prefix("polarity ")
            .ok_or_else(|| bad("missing polarity line"))?
            .parse()?;
        let machine_text = lines.next().ok_or_else(|| bad("missing machine section"))?;
        let machine = Wfsm::from_text(machine_text)?;
        if !machine.is_empty() {
            if machine.alphabet() != rule.detector_alphabet() {
                return Err(bad(&format!(
                    "machine alphabet {:?} does not match the rule's detector alphabet {:?}",
                    machine.alphabet().to_string(),
                    rule.detector_alphabet().to_string()
                )));
            }
            if machine.string_len() != Some(rule.len()) {
                return Err(bad("machine string length does not match the rule"));
            }
        }
        if mode == Mode::Unweighted {
            if let Some(t) = machine.transitions().iter().find(|t| !t.weight.is_one()) {
                return Err(bad(&format!(
                    "unweighted repertoire carries weight {} on a transition",
                    t.weight
                )));
            }
        }
        Ok(Repertoire {
            machine,
            rule,
            mode,
            polarity,
        })
    }
}
