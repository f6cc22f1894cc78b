//! Weighted finite state machines over exact rational weights, plus the
//! repertoire-model machinery built on top of them: matching rules,
//! positive/negative selection, and string anomaly-detection experiments.
//!
//! The engine represents large weighted string sets as deterministic acyclic
//! leveled automata. All set operations (union, intersection, set difference)
//! act pointwise on string weights, and machines are kept minimal by weight
//! pushing followed by level-wise state merging. Weights are arbitrary-precision
//! rationals so that equal path weights are always recognized as equal during
//! minimization; a float-weighted variant exists solely to demonstrate why that
//! matters (see [`experiments::merge_benchmark`]).

pub mod machine;
pub mod matching;
pub mod rational;
pub mod selection;
pub mod weight;

pub mod experiments;

mod minimize;
mod ops;
mod textio;
mod union;

pub use machine::{FsmStats, Machine, Wfsm};
pub use matching::{BiasTable, MatchingRule, RuleKind};
pub use rational::Rational;
pub use selection::{Mode, Polarity, Repertoire, Score, ScoreReport};
pub use weight::FloatWeight;

/// Alias kept for readability in signatures that deal with the float-weighted
/// benchmark machines.
pub type FloatWfsm = Machine<FloatWeight>;

use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("symbol {symbol:?} not in alphabet {alphabet:?}")]
    SymbolNotInAlphabet { symbol: char, alphabet: String },
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },
    #[error("machines have different string lengths: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },
    #[error("weight of the empty string is fixed to 1 by the path-product semantics; got {0}")]
    UnrepresentableEmptyWeight(String),
    #[error("zero weight not allowed: {0}")]
    ZeroWeight(String),
    #[error("machine language exceeds limit {limit}")]
    LanguageTooLarge { limit: u64 },
    #[error("string count exceeds u64 range")]
    CountOverflow,
    #[error("string {string:?} has length {got}, expected {expected}")]
    BadStringLength {
        string: String,
        got: usize,
        expected: usize,
    },
    #[error("invalid rule descriptor {descriptor:?}: {reason}")]
    InvalidRule { descriptor: String, reason: String },
    #[error("bias table shape mismatch: expected {expected_rows} rows x {expected_cols} symbols, {got}")]
    BiasShape {
        expected_rows: usize,
        expected_cols: usize,
        got: String,
    },
    #[error("bias factors must be positive; got {0} at position {1}")]
    NonPositiveBias(String, usize),
    #[error("training input is empty")]
    EmptyInput,
    #[error("line {line}: {reason}")]
    BadInputLine { line: usize, reason: String },
    #[error("machine file line {line}: {reason}")]
    BadMachineFile { line: usize, reason: String },
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("repertoire file: {0}")]
    BadRepertoireFile(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("no n-grams could be extracted from the training sample")]
    EmptyNgramStream,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
