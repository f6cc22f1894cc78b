//! The merge benchmark: building the full universe machine out of
//! single-string machines, one union at a time, recording sizes.
//!
//! All singletons carry unit weights and are pairwise disjoint, so the final
//! machine is semantically the unweighted universe. With exact rational
//! weights the minimizer recognizes equal path weights at every step and the
//! final machine is the minimal chain. With float weights the canonical
//! redistribution computes values like 1/3 that have no exact double
//! representation; different merge histories round them differently, states
//! stop merging, and the machine stays inflated.

use crate::machine::{Alphabet, Machine};
use crate::weight::{FloatWeight, Weight};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    Exact,
    Float64,
}

impl std::fmt::Display for WeightMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeightMode::Exact => "exact",
            WeightMode::Float64 => "float64",
        })
    }
}

impl std::str::FromStr for WeightMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(WeightMode::Exact),
            "float64" => Ok(WeightMode::Float64),
            other => Err(Error::Config(format!("unknown weight mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOrder {
    /// Balanced pairwise merging, layer by layer.
    BinaryTree,
    /// Left fold: union one singleton at a time.
    Sequential,
}

impl std::fmt::Display for MergeOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MergeOrder::BinaryTree => "binary-tree",
            MergeOrder::Sequential => "sequential",
        })
    }
}

impl std::str::FromStr for MergeOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary-tree" => Ok(MergeOrder::BinaryTree),
            "sequential" => Ok(MergeOrder::Sequential),
            other => Err(Error::Config(format!("unknown merge order {other:?}"))),
        }
    }
}

/// Machine size after one merge step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeStep {
    pub step: u32,
    pub num_strings: u64,
    pub states: usize,
    pub transitions: usize,
}

/// Builds the union of all `|alphabet|^len` unit-weight singletons in the
/// given order, minimizing after every union and recording the machine size
/// after each merge. The trace ends with the fully merged machine.
pub fn merge_benchmark(
    alphabet: &Alphabet,
    len: usize,
    mode: WeightMode,
    order: MergeOrder,
) -> Result<Vec<MergeStep>> {
    let universe = (alphabet.len() as u64)
        .checked_pow(len as u32)
        .filter(|&n| n <= 1_000_000)
        .ok_or_else(|| Error::Config("universe too large to enumerate".into()))?;
    if universe == 0 {
        return Err(Error::Config("alphabet must be nonempty".into()));
    }
    match mode {
        WeightMode::Exact => run::<Rational>(alphabet, len, order),
        WeightMode::Float64 => run::<FloatWeight>(alphabet, len, order),
    }
}

fn all_strings(alphabet: &Alphabet, len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|s| {
                alphabet.symbols().map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

fn run<W: Weight>(alphabet: &Alphabet, len: usize, order: MergeOrder) -> Result<Vec<MergeStep>> {
    let singletons: Vec<Machine<W>> = all_strings(alphabet, len)
        .iter()
        .map(|s| Machine::singleton(alphabet, s, W::one()))
        .collect::<Result<_>>()?;

    let mut trace = Vec::new();
    let mut step = 0u32;
    let record = |m: &Machine<W>, trace: &mut Vec<MergeStep>, step: &mut u32| -> Result<()> {
        *step += 1;
        trace.push(MergeStep {
            step: *step,
            num_strings: m.count_strings()?,
            states: m.num_states(),
            transitions: m.num_transitions(),
        });
        Ok(())
    };

    match order {
        MergeOrder::Sequential => {
            let mut iter = singletons.into_iter();
            let mut acc = iter.next().expect("nonempty universe");
            for next in iter {
                acc = acc.union(&next)?;
                record(&acc, &mut trace, &mut step)?;
            }
        }
        MergeOrder::BinaryTree => {
            let mut layer = singletons;
            while layer.len() > 1 {
                let mut merged = Vec::with_capacity(layer.len().div_ceil(2));
                let mut iter = layer.into_iter();
                while let Some(a) = iter.next() {
                    match iter.next() {
                        Some(b) => {
                            let u = a.union(&b)?;
                            record(&u, &mut trace, &mut step)?;
                            merged.push(u);
                        }
                        None => merged.push(a),
                    }
                }
                layer = merged;
            }
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_mode_collapses_to_the_minimal_chain() {
        let alpha = Alphabet::new("ab").unwrap();
        let trace = merge_benchmark(&alpha, 3, WeightMode::Exact, MergeOrder::BinaryTree).unwrap();
        let last = trace.last().unwrap();
        assert_eq!(last.num_strings, 8);
        // Minimal machine for {a,b}^3: 4 states, 6 transitions.
        assert_eq!((last.states, last.transitions), (4, 6));
        // One merge per union: 7 unions for 8 leaves.
        assert_eq!(trace.len(), 7);
    }

    #[test]
    fn sequential_order_reaches_the_same_machine() {
        let alpha = Alphabet::new("ab").unwrap();
        let trace = merge_benchmark(&alpha, 3, WeightMode::Exact, MergeOrder::Sequential).unwrap();
        let last = trace.last().unwrap();
        assert_eq!((last.states, last.transitions), (4, 6));
        assert_eq!(last.num_strings, 8);
    }

    #[test]
    fn universe_size_guard() {
        let alpha = Alphabet::new("abcdefghij").unwrap();
        assert!(merge_benchmark(&alpha, 9, WeightMode::Exact, MergeOrder::BinaryTree).is_err());
    }
}
