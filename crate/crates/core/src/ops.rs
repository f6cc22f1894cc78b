//! Weighted intersection, set difference, support, and scaling.

use std::collections::HashMap;

use crate::machine::{Builder, Machine};
use crate::weight::Weight;
use crate::{Error, Result};

impl<W: Weight> Machine<W> {
    /// Pointwise weighted intersection: `w(s) = w_self(s) * w_other(s)`,
    /// by product construction on state pairs.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.require_same_alphabet(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Machine::empty(self.alphabet().clone()));
        }
        self.require_same_len(other)?;

        let mut b = Builder::new(self.alphabet().clone());
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let start = b.add_state();
        ids.insert((0, 0), start);
        let mut frontier = vec![(0u32, 0u32, start)];
        while let Some((q1, q2, id)) = frontier.pop() {
            if self.is_final(q1) && other.is_final(q2) {
                b.mark_final(id);
                continue;
            }
            for t1 in self.transitions_from(q1) {
                if let Some(t2) = other.transition(q2, t1.sym) {
                    let pair = (t1.dst, t2.dst);
                    let dst = match ids.get(&pair) {
                        Some(&existing) => existing,
                        None => {
                            let fresh = b.add_state();
                            ids.insert(pair, fresh);
                            frontier.push((t1.dst, t2.dst, fresh));
                            fresh
                        }
                    };
                    b.add_transition(id, dst, t1.sym, t1.weight.times(&t2.weight));
                }
            }
        }
        Ok(b.finish(start).minimize())
    }

    /// Weighted set difference: strings of `other`'s language are removed
    /// regardless of their weights there; everything else keeps its weight
    /// in `self`. Implemented as intersection with the complement of
    /// `other`'s support over the leveled universe.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.require_same_alphabet(other)?;
        if self.is_empty() {
            return Ok(Machine::empty(self.alphabet().clone()));
        }
        if other.is_empty() {
            return Ok(self.minimize());
        }
        let len = self.require_same_len(other)?;
        let complement = other.complement_support(len);
        if complement.is_empty() {
            return Ok(Machine::empty(self.alphabet().clone()));
        }
        self.intersect(&complement)
    }

    /// Unit-weight machine accepting the complement of this machine's
    /// language within the leveled universe of length-`len` strings.
    fn complement_support(&self, len: usize) -> Self {
        let sigma = self.alphabet().len() as u8;
        let mut b = Builder::new(self.alphabet().clone());
        for _ in 0..self.num_states() {
            b.add_state();
        }
        // Sink chain: sink[k] is at depth k+1.
        let sinks: Vec<u32> = (0..len).map(|_| b.add_state()).collect();
        if let Some(&last) = sinks.last() {
            b.mark_final(last);
        }
        for w in sinks.windows(2) {
            for sym in 0..sigma {
                b.add_transition(w[0], w[1], sym, W::one());
            }
        }
        let levels = self.state_levels();
        for q in 0..self.num_states() as u32 {
            let level = levels[q as usize] as usize;
            if level == len {
                continue; // former finals die in the complement
            }
            for sym in 0..sigma {
                match self.transition(q, sym) {
                    Some(t) => b.add_transition(q, t.dst, sym, W::one()),
                    None => b.add_transition(q, sinks[level], sym, W::one()),
                }
            }
        }
        b.finish(0)
    }

    /// Forgets weights: same language, every string at weight 1.
    pub fn support(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut b = Builder::new(self.alphabet().clone());
        for _ in 0..self.num_states() {
            b.add_state();
        }
        for q in self.final_states() {
            b.mark_final(q);
        }
        for t in self.transitions() {
            b.add_transition(t.src, t.dst, t.sym, W::one());
        }
        b.finish(0).minimize()
    }

    /// Multiplies every string weight by `factor` (applied to the start
    /// state's outgoing transitions).
    pub fn scale(&self, factor: &W) -> Result<Self> {
        if factor.is_zero() {
            return Err(Error::ZeroWeight("scale factor".into()));
        }
        if self.is_empty() || factor.is_one() {
            return Ok(self.clone());
        }
        if self.string_len() == Some(0) {
            return Err(Error::UnrepresentableEmptyWeight(format!("{factor}")));
        }
        let mut b = Builder::new(self.alphabet().clone());
        for _ in 0..self.num_states() {
            b.add_state();
        }
        for q in self.final_states() {
            b.mark_final(q);
        }
        for t in self.transitions() {
            let w = if t.src == 0 {
                t.weight.times(factor)
            } else {
                t.weight.clone()
            };
            b.add_transition(t.src, t.dst, t.sym, w);
        }
        Ok(b.finish(0))
    }
}
