//! Weighted union.
//!
//! The union machine assigns every string the sum of its weights in the two
//! operands. Both operands are deterministic, so the construction walks pairs
//! of states while tracking how much residual mass each side still carries
//! relative to the path product emitted so far. Residual pairs are normalized
//! by the first live side, which makes proportional pairs collapse into one
//! state; the last transition into the final level absorbs the summed mass,
//! so a string whose weights cancel exactly simply loses its transition and
//! drops out of the language, as the definition's cancellation clause
//! requires.

use std::collections::HashMap;

use crate::machine::{Builder, Machine};
use crate::weight::Weight;
use crate::{Error, Result};

/// One side of an in-progress union state: a source state plus the residual
/// weight still owed by that operand.
type Side<W> = Option<(u32, W)>;

#[derive(Clone, PartialEq, Eq, Hash)]
struct PairKey<W> {
    left: Side<W>,
    right: Side<W>,
}

impl<W: Weight> Machine<W> {
    /// Pointwise weighted union: `w(s) = w_self(s) + w_other(s)`.
    ///
    /// Strings whose weights cancel exactly are removed. The result is
    /// deterministic, trimmed, and minimized.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.require_same_alphabet(other)?;
        if self.is_empty() {
            return Ok(other.minimize());
        }
        if other.is_empty() {
            return Ok(self.minimize());
        }
        let len = self.require_same_len(other)?;
        if len == 0 {
            // Both machines accept only the empty string at weight 1; the sum
            // cannot be carried by any transition.
            return Err(Error::UnrepresentableEmptyWeight(
                "2/1 (union of empty-string machines)".into(),
            ));
        }

        let mut b = Builder::new(self.alphabet().clone());
        let start = b.add_state();
        let final_state = b.add_state();
        b.mark_final(final_state);

        let start_key = PairKey {
            left: Some((0, W::one())),
            right: Some((0, W::one())),
        };
        let mut ids: HashMap<PairKey<W>, u32> = HashMap::new();
        ids.insert(start_key.clone(), start);
        let mut frontier: Vec<(PairKey<W>, u32)> = vec![(start_key, start)];

        for level in 0..len {
            let last = level + 1 == len;
            let mut next: Vec<(PairKey<W>, u32)> = Vec::new();
            for (key, id) in frontier {
                for sym in 0..self.alphabet().len() as u8 {
                    let left = key
                        .left
                        .as_ref()
                        .and_then(|(q, r)| self.transition(*q, sym).map(|t| (t.dst, r.times(&t.weight))));
                    let right = key
                        .right
                        .as_ref()
                        .and_then(|(q, r)| other.transition(*q, sym).map(|t| (t.dst, r.times(&t.weight))));
                    if left.is_none() && right.is_none() {
                        continue;
                    }
                    if last {
                        // Absorb the remaining mass of both sides into the
                        // accepting transition.
                        let mut total = W::zero();
                        if let Some((_, m)) = &left {
                            total = total.plus(m);
                        }
                        if let Some((_, m)) = &right {
                            total = total.plus(m);
                        }
                        if total.is_zero() {
                            continue; // exact cancellation: string removed
                        }
                        b.add_transition(id, final_state, sym, total);
                    } else {
                        let norm = match (&left, &right) {
                            (Some((_, m)), _) => m.clone(),
                            (None, Some((_, m))) => m.clone(),
                            (None, None) => unreachable!(),
                        };
                        let next_key = PairKey {
                            left: left.map(|(q, m)| (q, m.divide(&norm))),
                            right: right.map(|(q, m)| (q, m.divide(&norm))),
                        };
                        let next_id = match ids.get(&next_key) {
                            Some(&existing) => existing,
                            None => {
                                let fresh = b.add_state();
                                ids.insert(next_key.clone(), fresh);
                                next.push((next_key, fresh));
                                fresh
                            }
                        };
                        b.add_transition(id, next_id, sym, norm);
                    }
                }
            }
            frontier = next;
        }

        Ok(b.finish(start).minimize())
    }

    /// Union of many machines by balanced pairwise merging, minimizing after
    /// every step to keep intermediates small.
    pub fn union_all(machines: Vec<Self>) -> Result<Self> {
        let mut layer = machines;
        if layer.is_empty() {
            return Err(Error::EmptyInput);
        }
        while layer.len() > 1 {
            let mut merged = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => merged.push(a.union(&b)?),
                    None => merged.push(a),
                }
            }
            layer = merged;
        }
        Ok(layer.pop().expect("nonempty layer"))
    }
}
