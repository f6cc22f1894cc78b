//! Weight pushing and minimization.
//!
//! Minimization runs in two stages. First, weights are pushed into canonical
//! position: each transition is reweighted by suffix-sum potentials so that
//! states whose residual languages are proportional end up with identical
//! outgoing weights. Second, states are merged level by level from the finals
//! upward, treating (symbol, weight, target class) triples as the merge
//! signature — weight equality is exact value identity, which is why the
//! rational instantiation minimizes fully while the float one may not.

use std::collections::HashMap;

use crate::machine::{Builder, Machine};
use crate::weight::Weight;

impl<W: Weight> Machine<W> {
    /// Redistributes weights canonically along paths; string weights are
    /// unchanged.
    ///
    /// The potential of a state is the summed weight of all its paths to a
    /// final state. Every transition weight is multiplied by the target's
    /// potential and divided by the source's; the start state's outgoing
    /// transitions absorb the total mass instead of dividing. A state whose
    /// suffix weights cancel to an exact zero falls back to the weight of its
    /// lexicographically smallest suffix, so the potential is never zero and
    /// no string's weight is disturbed.
    pub fn push_weights(&self) -> Machine<W> {
        if self.is_empty() {
            return self.clone();
        }
        let sums = self.suffix_weights();
        let mut potentials: Vec<W> = Vec::with_capacity(self.num_states());
        let mut leading: Option<Vec<W>> = None;
        for (q, v) in sums.into_iter().enumerate() {
            if v.is_zero() {
                let lead = leading.get_or_insert_with(|| self.leading_suffix_weights());
                potentials.push(lead[q].clone());
            } else {
                potentials.push(v);
            }
        }

        let mut b = Builder::new(self.alphabet().clone());
        for _ in 0..self.num_states() {
            b.add_state();
        }
        for q in self.final_states() {
            b.mark_final(q);
        }
        for t in self.transitions() {
            let scaled = t.weight.times(&potentials[t.dst as usize]);
            let w = if t.src == 0 {
                scaled
            } else {
                scaled.divide(&potentials[t.src as usize])
            };
            b.add_transition(t.src, t.dst, t.sym, w);
        }
        b.finish(0)
    }

    /// The minimal deterministic machine with the same string weights.
    ///
    /// Pushes weights, then merges states whose outgoing
    /// (symbol, weight, target) signatures coincide, processing levels from
    /// the finals upward.
    pub fn minimize(&self) -> Machine<W> {
        if self.is_empty() {
            return self.clone();
        }
        let pushed = self.push_weights();

        let levels = pushed.state_levels();
        let max_level = *levels.iter().max().expect("nonempty machine");
        let mut by_level: Vec<Vec<u32>> = vec![Vec::new(); max_level as usize + 1];
        for q in 0..pushed.num_states() as u32 {
            by_level[levels[q as usize] as usize].push(q);
        }

        // classes[q] is assigned once level(q) is processed.
        let mut class_of: Vec<u32> = vec![u32::MAX; pushed.num_states()];
        let mut num_classes: u32 = 0;
        let mut representative: Vec<u32> = Vec::new();

        type Signature<W> = (bool, Vec<(u8, W, u32)>);
        for level in (0..=max_level).rev() {
            let mut seen: HashMap<Signature<W>, u32> = HashMap::new();
            for &q in &by_level[level as usize] {
                let sig: Signature<W> = (
                    pushed.is_final(q),
                    pushed
                        .transitions_from(q)
                        .iter()
                        .map(|t| (t.sym, t.weight.clone(), class_of[t.dst as usize]))
                        .collect(),
                );
                let class = *seen.entry(sig).or_insert_with(|| {
                    representative.push(q);
                    num_classes += 1;
                    num_classes - 1
                });
                class_of[q as usize] = class;
            }
        }

        let mut b = Builder::new(self.alphabet().clone());
        for _ in 0..num_classes {
            b.add_state();
        }
        for (class, &rep) in representative.iter().enumerate() {
            if pushed.is_final(rep) {
                b.mark_final(class as u32);
            }
            for t in pushed.transitions_from(rep) {
                b.add_transition(
                    class as u32,
                    class_of[t.dst as usize],
                    t.sym,
                    t.weight.clone(),
                );
            }
        }
        b.finish(class_of[0])
    }
}
