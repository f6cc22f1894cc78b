//! The machine text format.
//!
//! One machine per file:
//!
//! ```text
//! wfsm v1 alphabet=<characters in order>
//! <src> <dst> <symbol> <num>/<den>
//! final <state>
//! ```
//!
//! The start state is always 0. Canonical output sorts transitions by
//! (source, symbol index) and final states ascending; parsing such a file and
//! serializing it again reproduces it byte for byte. Parsing validates every
//! structural invariant (determinism, acyclicity, leveling, trimmedness,
//! nonzero lowest-terms weights), so `fsm check` is just a parse.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::machine::{Alphabet, Transition, Wfsm};
use crate::{Error, Rational, Result};

const HEADER_PREFIX: &str = "wfsm v1 alphabet=";

impl Wfsm {
    /// Serializes to the canonical text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{HEADER_PREFIX}{}", self.alphabet());
        for t in self.transitions() {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                t.src,
                t.dst,
                self.alphabet().char_at(t.sym),
                t.weight
            );
        }
        let mut finals: Vec<u32> = self.final_states().collect();
        finals.sort_unstable();
        for q in finals {
            let _ = writeln!(out, "final {q}");
        }
        out
    }

    /// Parses the text form, validating all machine invariants.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::BadMachineFile {
            line: 1,
            reason: "empty file".into(),
        })?;
        let alphabet_chars = header
            .strip_prefix(HEADER_PREFIX)
            .ok_or_else(|| Error::BadMachineFile {
                line: 1,
                reason: format!("expected header starting with {HEADER_PREFIX:?}"),
            })?;
        let alphabet = Alphabet::new(alphabet_chars)?;

        let mut transitions: Vec<Transition<Rational>> = Vec::new();
        let mut finals: Vec<u32> = Vec::new();
        let mut max_state: Option<u32> = None;
        let track = |q: u32, max_state: &mut Option<u32>| {
            *max_state = Some(max_state.map_or(q, |m| m.max(q)));
        };

        for (idx, raw) in lines {
            let lineno = idx + 1;
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |reason: String| Error::BadMachineFile {
                line: lineno,
                reason,
            };
            if fields[0] == "final" {
                if fields.len() != 2 {
                    return Err(bad("expected `final <state>`".into()));
                }
                let q: u32 = fields[1]
                    .parse()
                    .map_err(|_| bad(format!("bad state id {:?}", fields[1])))?;
                if finals.contains(&q) {
                    return Err(bad(format!("duplicate final state {q}")));
                }
                track(q, &mut max_state);
                finals.push(q);
            } else {
                if fields.len() != 4 {
                    return Err(bad("expected `<src> <dst> <symbol> <num>/<den>`".into()));
                }
                let src: u32 = fields[0]
                    .parse()
                    .map_err(|_| bad(format!("bad state id {:?}", fields[0])))?;
                let dst: u32 = fields[1]
                    .parse()
                    .map_err(|_| bad(format!("bad state id {:?}", fields[1])))?;
                let mut chars = fields[2].chars();
                let (symbol, rest) = (chars.next(), chars.next());
                let symbol = match (symbol, rest) {
                    (Some(c), None) => c,
                    _ => return Err(bad(format!("symbol must be one character, got {:?}", fields[2]))),
                };
                let sym = alphabet
                    .index_of(symbol)
                    .ok_or_else(|| bad(format!("symbol {symbol:?} not in alphabet")))?;
                let weight = Rational::from_str(fields[3])
                    .map_err(|e| bad(format!("bad weight {:?}: {e}", fields[3])))?;
                if weight.to_string() != fields[3] {
                    return Err(bad(format!(
                        "weight {:?} is not in canonical lowest-terms form ({weight})",
                        fields[3]
                    )));
                }
                if weight.is_zero() {
                    return Err(Error::InvariantViolated(format!(
                        "zero-weight transition on line {lineno}"
                    )));
                }
                track(src, &mut max_state);
                track(dst, &mut max_state);
                transitions.push(Transition {
                    src,
                    dst,
                    sym,
                    weight,
                });
            }
        }

        let num_states = max_state.map_or(0, |m| m + 1);
        let mut final_flags = vec![false; num_states as usize];
        for q in finals {
            final_flags[q as usize] = true;
        }

        // Every id in 0..num_states must actually occur, otherwise the
        // machine has a hole (and could not be trimmed).
        if num_states > 0 {
            let mut mentioned = vec![false; num_states as usize];
            for t in &transitions {
                mentioned[t.src as usize] = true;
                mentioned[t.dst as usize] = true;
            }
            for (q, f) in final_flags.iter().enumerate() {
                if *f {
                    mentioned[q] = true;
                }
            }
            if let Some(q) = mentioned.iter().position(|m| !m) {
                return Err(Error::InvariantViolated(format!(
                    "state ids are not contiguous: {q} is missing"
                )));
            }
        }

        Wfsm::from_validated_parts(alphabet, num_states, final_flags, transitions)
    }
}
