//! Deterministic acyclic leveled weighted automata.
//!
//! A machine stores a weighted set of fixed-length strings: every accepted
//! string has exactly one path from the start state to a final state, and its
//! weight is the product of the transition weights along that path. Machines
//! are immutable after construction; every operation returns a new machine.
//!
//! Structural invariants maintained by all constructors:
//! - state ids are contiguous, the start state is always 0;
//! - deterministic: at most one outgoing transition per (state, symbol);
//! - leveled: every state sits at a fixed depth, all finals at the same depth;
//! - trimmed: every state lies on some start-to-final path;
//! - no transition carries weight zero.

use std::collections::HashMap;
use std::fmt;

use crate::weight::Weight;
use crate::{Error, Rational, Result};

/// An ordered set of symbols. The order defines lexicographic enumeration
/// and the canonical transition ordering in the file format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn new(chars: &str) -> Result<Self> {
        let list: Vec<char> = chars.chars().collect();
        for (i, c) in list.iter().enumerate() {
            if c.is_whitespace() {
                return Err(Error::Config(format!(
                    "alphabet {chars:?} contains whitespace"
                )));
            }
            if list[..i].contains(c) {
                return Err(Error::Config(format!(
                    "alphabet {chars:?} repeats symbol {c:?}"
                )));
            }
        }
        if list.len() > 255 {
            return Err(Error::Config("alphabet larger than 255 symbols".into()));
        }
        Ok(Alphabet { chars: list })
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.chars.iter().position(|&x| x == c).map(|i| i as u8)
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    pub fn char_at(&self, idx: u8) -> char {
        self.chars[idx as usize]
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.chars.iter().copied()
    }

    /// Maps a string to symbol indices; errors on the first foreign character.
    pub fn encode(&self, s: &str) -> Result<Vec<u8>> {
        s.chars()
            .map(|c| {
                self.index_of(c).ok_or_else(|| Error::SymbolNotInAlphabet {
                    symbol: c,
                    alphabet: self.to_string(),
                })
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chars {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// One weighted labeled edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition<W> {
    pub src: u32,
    pub dst: u32,
    pub sym: u8,
    pub weight: W,
}

/// State and transition counts of a trimmed machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FsmStats {
    pub num_states: usize,
    pub num_transitions: usize,
}

impl fmt::Display for FsmStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states={} transitions={}",
            self.num_states, self.num_transitions
        )
    }
}

/// A deterministic acyclic leveled weighted automaton.
///
/// The canonical instantiation is [`Wfsm`] with exact rational weights; the
/// float variant exists for the merge benchmark only.
#[derive(Debug, Clone)]
pub struct Machine<W: Weight> {
    alphabet: Alphabet,
    num_states: u32,
    finals: Vec<bool>,
    /// Sorted by (src, sym).
    transitions: Vec<Transition<W>>,
    /// CSR offsets: transitions of state `q` are `out[out_index[q]..out_index[q+1]]`.
    out_index: Vec<u32>,
    /// Depth of each state below the start.
    levels: Vec<u32>,
    /// Length of every accepted string; `None` only for the empty machine.
    string_len: Option<usize>,
}

/// The engine's machine type: exact rational weights.
pub type Wfsm = Machine<Rational>;

impl<W: Weight> PartialEq for Machine<W> {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.num_states == other.num_states
            && self.finals == other.finals
            && self.transitions == other.transitions
    }
}

impl<W: Weight> Eq for Machine<W> {}

impl<W: Weight> Machine<W> {
    /// The machine with no states and the empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        Machine {
            alphabet,
            num_states: 0,
            finals: Vec::new(),
            transitions: Vec::new(),
            out_index: vec![0],
            levels: Vec::new(),
            string_len: None,
        }
    }

    /// A machine accepting exactly `s` with weight `w`.
    ///
    /// The empty string can only carry weight 1: with no final-state weights,
    /// the empty path's weight is the empty product.
    pub fn singleton(alphabet: &Alphabet, s: &str, w: W) -> Result<Self> {
        if w.is_zero() {
            return Err(Error::ZeroWeight(format!("singleton weight for {s:?}")));
        }
        let syms = alphabet.encode(s)?;
        if syms.is_empty() && !w.is_one() {
            return Err(Error::UnrepresentableEmptyWeight(format!("{w}")));
        }
        let mut b = Builder::new(alphabet.clone());
        let mut cur = b.add_state();
        for (i, &sym) in syms.iter().enumerate() {
            let next = b.add_state();
            // Carry the whole weight on the first transition.
            let tw = if i == 0 { w.clone() } else { W::one() };
            b.add_transition(cur, next, sym, tw);
            cur = next;
        }
        b.mark_final(cur);
        Ok(b.finish(0))
    }

    /// Builds a machine holding exactly the given strings and weights, as a
    /// plain trie with each string's weight on its last transition. The
    /// result is deterministic and trimmed but not minimized. All strings
    /// must share one length; duplicates and zero weights are rejected.
    pub fn from_weighted_strings(alphabet: &Alphabet, pairs: &[(String, W)]) -> Result<Self> {
        if pairs.is_empty() {
            return Ok(Machine::empty(alphabet.clone()));
        }
        let len = pairs[0].0.chars().count();
        let mut b = Builder::new(alphabet.clone());
        let root = b.add_state();
        // prefix node table: trie[state] maps symbol -> child state
        let mut children: Vec<HashMap<u8, u32>> = vec![HashMap::new()];
        let mut seen: Vec<&str> = Vec::new();
        for (s, w) in pairs {
            let syms = alphabet.encode(s)?;
            if syms.len() != len {
                return Err(Error::LevelMismatch {
                    left: len,
                    right: syms.len(),
                });
            }
            if w.is_zero() {
                return Err(Error::ZeroWeight(format!("weight of {s:?}")));
            }
            if seen.contains(&s.as_str()) {
                return Err(Error::Config(format!("duplicate string {s:?}")));
            }
            seen.push(s);
            if syms.is_empty() {
                if !w.is_one() {
                    return Err(Error::UnrepresentableEmptyWeight(format!("{w}")));
                }
                b.mark_final(root);
                continue;
            }
            let mut cur = root;
            for (i, &sym) in syms.iter().enumerate() {
                let last = i + 1 == syms.len();
                let next = match children[cur as usize].get(&sym) {
                    Some(&q) => q,
                    None => {
                        let q = b.add_state();
                        children.push(HashMap::new());
                        children[cur as usize].insert(sym, q);
                        let weight = if last { w.clone() } else { W::one() };
                        b.add_transition(cur, q, sym, weight);
                        q
                    }
                };
                if last {
                    b.mark_final(next);
                }
                cur = next;
            }
        }
        Ok(b.finish(root))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_empty(&self) -> bool {
        self.num_states == 0
    }

    pub fn num_states(&self) -> usize {
        self.num_states as usize
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn stats(&self) -> FsmStats {
        FsmStats {
            num_states: self.num_states(),
            num_transitions: self.num_transitions(),
        }
    }

    /// Length of the accepted strings; `None` for the empty machine.
    pub fn string_len(&self) -> Option<usize> {
        self.string_len
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn transitions(&self) -> &[Transition<W>] {
        &self.transitions
    }

    pub fn transitions_from(&self, q: u32) -> &[Transition<W>] {
        let lo = self.out_index[q as usize] as usize;
        let hi = self.out_index[q as usize + 1] as usize;
        &self.transitions[lo..hi]
    }

    pub(crate) fn transition(&self, q: u32, sym: u8) -> Option<&Transition<W>> {
        self.transitions_from(q).iter().find(|t| t.sym == sym)
    }

    pub(crate) fn state_levels(&self) -> &[u32] {
        &self.levels
    }

    pub(crate) fn final_states(&self) -> impl Iterator<Item = u32> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter(|(_, f)| **f)
            .map(|(q, _)| q as u32)
    }

    /// Weight of `s`: the path product, or zero when `s` is not accepted.
    pub fn weight_of(&self, s: &str) -> W {
        if self.is_empty() {
            return W::zero();
        }
        let mut q = 0u32;
        let mut acc = W::one();
        for c in s.chars() {
            let Some(sym) = self.alphabet.index_of(c) else {
                return W::zero();
            };
            match self.transition(q, sym) {
                Some(t) => {
                    acc = acc.times(&t.weight);
                    q = t.dst;
                }
                None => return W::zero(),
            }
        }
        if self.is_final(q) {
            acc
        } else {
            W::zero()
        }
    }

    /// Number of accepted strings, by path counting.
    pub fn count_strings(&self) -> Result<u64> {
        if self.is_empty() {
            return Ok(0);
        }
        let mut counts = vec![0u64; self.num_states()];
        for q in (0..self.num_states).rev() {
            // States are BFS-numbered, so all targets have larger ids.
            let mut n: u64 = if self.is_final(q) { 1 } else { 0 };
            for t in self.transitions_from(q) {
                n = n
                    .checked_add(counts[t.dst as usize])
                    .ok_or(Error::CountOverflow)?;
            }
            counts[q as usize] = n;
        }
        Ok(counts[0])
    }

    /// Sum of all string weights, by one backward pass over the DAG.
    pub fn total_weight(&self) -> W {
        if self.is_empty() {
            return W::zero();
        }
        self.suffix_weights()[0].clone()
    }

    /// For each state, the summed weight of all paths to a final state.
    pub(crate) fn suffix_weights(&self) -> Vec<W> {
        let mut v = vec![W::zero(); self.num_states()];
        for q in (0..self.num_states).rev() {
            let mut acc = if self.is_final(q) { W::one() } else { W::zero() };
            for t in self.transitions_from(q) {
                acc = acc.plus(&t.weight.times(&v[t.dst as usize]));
            }
            v[q as usize] = acc;
        }
        v
    }

    /// For each state, the weight of its lexicographically smallest suffix.
    /// Never zero on a trimmed machine.
    pub(crate) fn leading_suffix_weights(&self) -> Vec<W> {
        let mut v = vec![W::one(); self.num_states()];
        for q in (0..self.num_states).rev() {
            if self.is_final(q) {
                v[q as usize] = W::one();
            } else {
                let t = self
                    .transitions_from(q)
                    .first()
                    .expect("trimmed non-final state has outgoing transitions");
                v[q as usize] = t.weight.times(&v[t.dst as usize]);
            }
        }
        v
    }

    /// All accepted strings with their weights, in lexicographic order of the
    /// alphabet. Errors when the language is larger than `limit`.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<(String, W)>> {
        if self.count_strings()? > limit {
            return Err(Error::LanguageTooLarge { limit });
        }
        let mut out = Vec::new();
        if self.is_empty() {
            return Ok(out);
        }
        let mut prefix = String::new();
        self.enumerate_from(0, &mut prefix, &W::one(), &mut out);
        Ok(out)
    }

    fn enumerate_from(&self, q: u32, prefix: &mut String, acc: &W, out: &mut Vec<(String, W)>) {
        if self.is_final(q) {
            out.push((prefix.clone(), acc.clone()));
            return;
        }
        for t in self.transitions_from(q) {
            prefix.push(self.alphabet.char_at(t.sym));
            self.enumerate_from(t.dst, prefix, &acc.times(&t.weight), out);
            prefix.pop();
        }
    }

    pub(crate) fn require_same_alphabet(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_same_len(&self, other: &Self) -> Result<usize> {
        match (self.string_len, other.string_len) {
            (Some(a), Some(b)) if a == b => Ok(a),
            (Some(a), Some(b)) => Err(Error::LevelMismatch { left: a, right: b }),
            _ => unreachable!("callers handle empty operands first"),
        }
    }
}

impl Machine<Rational> {
    /// Largest (numerator, denominator) digit counts over all weights.
    /// Telemetry for weight growth; see [`Rational::digits`].
    pub fn weight_digits(&self) -> (usize, usize) {
        let mut max = (0, 0);
        for t in &self.transitions {
            let d = t.weight.digits();
            max.0 = max.0.max(d.0);
            max.1 = max.1.max(d.1);
        }
        max
    }
}

/// Mutable construction buffer. `finish` trims, renumbers states into BFS
/// order (so equal machines compare equal), and checks the structural
/// invariants.
pub(crate) struct Builder<W> {
    alphabet: Alphabet,
    finals: Vec<bool>,
    adj: Vec<Vec<(u8, u32, W)>>,
}

impl<W: Weight> Builder<W> {
    pub(crate) fn new(alphabet: Alphabet) -> Self {
        Builder {
            alphabet,
            finals: Vec::new(),
            adj: Vec::new(),
        }
    }

    pub(crate) fn add_state(&mut self) -> u32 {
        self.finals.push(false);
        self.adj.push(Vec::new());
        (self.finals.len() - 1) as u32
    }

    pub(crate) fn mark_final(&mut self, q: u32) {
        self.finals[q as usize] = true;
    }

    pub(crate) fn add_transition(&mut self, src: u32, dst: u32, sym: u8, weight: W) {
        debug_assert!(!weight.is_zero(), "zero weight transition");
        self.adj[src as usize].push((sym, dst, weight));
    }

    /// Trims dead states, renumbers by BFS in symbol order, builds the CSR
    /// machine. Panics if construction code ever produces a nondeterministic
    /// or non-leveled graph: that is a bug, not an input error.
    pub(crate) fn finish(mut self, start: u32) -> Machine<W> {
        let n = self.adj.len();
        if n == 0 {
            return Machine::empty(self.alphabet);
        }

        // Forward reachability.
        let mut fwd = vec![false; n];
        let mut stack = vec![start];
        fwd[start as usize] = true;
        while let Some(q) = stack.pop() {
            for &(_, dst, _) in &self.adj[q as usize] {
                if !fwd[dst as usize] {
                    fwd[dst as usize] = true;
                    stack.push(dst);
                }
            }
        }

        // Backward reachability from finals (over the reachable subgraph).
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (src, list) in self.adj.iter().enumerate() {
            if !fwd[src] {
                continue;
            }
            for &(_, dst, _) in list {
                rev[dst as usize].push(src as u32);
            }
        }
        let mut alive = vec![false; n];
        let mut stack: Vec<u32> = (0..n as u32)
            .filter(|&q| fwd[q as usize] && self.finals[q as usize])
            .collect();
        for &q in &stack {
            alive[q as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !alive[p as usize] {
                    alive[p as usize] = true;
                    stack.push(p);
                }
            }
        }

        if !alive[start as usize] {
            return Machine::empty(self.alphabet);
        }

        // BFS renumbering over live states, visiting symbols in order.
        for list in &mut self.adj {
            list.sort_by_key(|&(sym, _, _)| sym);
        }
        let mut renum: Vec<Option<u32>> = vec![None; n];
        let mut order: Vec<u32> = Vec::new();
        let mut level_of: Vec<u32> = Vec::new();
        renum[start as usize] = Some(0);
        order.push(start);
        level_of.push(0);
        let mut head = 0usize;
        while head < order.len() {
            let q = order[head];
            let q_level = level_of[head];
            head += 1;
            for &(_, dst, _) in &self.adj[q as usize] {
                if !alive[dst as usize] {
                    continue;
                }
                match renum[dst as usize] {
                    None => {
                        renum[dst as usize] = Some(order.len() as u32);
                        order.push(dst);
                        level_of.push(q_level + 1);
                    }
                    Some(id) => {
                        let existing = level_of[id as usize];
                        assert_eq!(
                            existing,
                            q_level + 1,
                            "non-leveled graph produced by an operation"
                        );
                    }
                }
            }
        }

        let num_states = order.len() as u32;
        let mut finals = vec![false; order.len()];
        let mut transitions: Vec<Transition<W>> = Vec::new();
        for (new_id, &old_id) in order.iter().enumerate() {
            finals[new_id] = self.finals[old_id as usize];
            let mut seen: Vec<u8> = Vec::new();
            for (sym, dst, weight) in std::mem::take(&mut self.adj[old_id as usize]) {
                if !alive[dst as usize] {
                    continue;
                }
                assert!(!seen.contains(&sym), "determinism violated by an operation");
                seen.push(sym);
                transitions.push(Transition {
                    src: new_id as u32,
                    dst: renum[dst as usize].unwrap(),
                    sym,
                    weight,
                });
            }
        }
        transitions.sort_by_key(|t| (t.src, t.sym));

        let mut out_index = vec![0u32; order.len() + 1];
        for t in &transitions {
            out_index[t.src as usize + 1] += 1;
        }
        for i in 0..order.len() {
            out_index[i + 1] += out_index[i];
        }

        // Uniform final depth.
        let final_levels: Vec<u32> = (0..num_states)
            .filter(|&q| finals[q as usize])
            .map(|q| level_of[q as usize])
            .collect();
        assert!(!final_levels.is_empty());
        let ell = final_levels[0];
        assert!(
            final_levels.iter().all(|&l| l == ell),
            "finals at mixed depths"
        );

        Machine {
            alphabet: self.alphabet,
            num_states,
            finals,
            transitions,
            out_index,
            levels: level_of,
            string_len: Some(ell as usize),
        }
    }
}

/// Full invariant validation used by the file parser and `fsm check`.
/// Unlike `Builder::finish`, violations are reported as errors.
pub(crate) fn validate_parts<W: Weight>(
    alphabet: &Alphabet,
    num_states: u32,
    finals: &[bool],
    transitions: &[Transition<W>],
) -> Result<(Vec<u32>, usize)> {
    if num_states == 0 {
        if !transitions.is_empty() || finals.iter().any(|&f| f) {
            return Err(Error::InvariantViolated(
                "transitions or finals reference states in an empty machine".into(),
            ));
        }
        return Ok((Vec::new(), 0));
    }
    let n = num_states as usize;
    let mut seen: HashMap<(u32, u8), ()> = HashMap::new();
    for t in transitions {
        if t.src >= num_states || t.dst >= num_states {
            return Err(Error::InvariantViolated(format!(
                "transition {} -> {} references a missing state",
                t.src, t.dst
            )));
        }
        if t.weight.is_zero() {
            return Err(Error::InvariantViolated(format!(
                "zero-weight transition from state {}",
                t.src
            )));
        }
        if seen.insert((t.src, t.sym), ()).is_some() {
            return Err(Error::InvariantViolated(format!(
                "determinism violated: state {} has two transitions on {:?}",
                t.src,
                alphabet.char_at(t.sym)
            )));
        }
    }

    // Levels via BFS from state 0; also detects cycles and unreachable states.
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for t in transitions {
        adj[t.src as usize].push(t.dst);
    }
    let mut level: Vec<Option<u32>> = vec![None; n];
    level[0] = Some(0);
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(q) = queue.pop_front() {
        let ql = level[q as usize].unwrap();
        for &dst in &adj[q as usize] {
            match level[dst as usize] {
                None => {
                    if dst == 0 {
                        return Err(Error::InvariantViolated("cycle through the start".into()));
                    }
                    level[dst as usize] = Some(ql + 1);
                    queue.push_back(dst);
                }
                Some(dl) => {
                    if dl != ql + 1 {
                        return Err(Error::InvariantViolated(format!(
                            "not leveled: state {dst} reached at depths {dl} and {}",
                            ql + 1
                        )));
                    }
                }
            }
        }
        if ql as usize > n {
            return Err(Error::InvariantViolated("cycle detected".into()));
        }
    }
    if level.iter().any(|l| l.is_none()) {
        return Err(Error::InvariantViolated(
            "not trimmed: unreachable state".into(),
        ));
    }

    // Co-reachability: every state must reach a final state.
    let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
    for t in transitions {
        rev[t.dst as usize].push(t.src);
    }
    let mut coreach = vec![false; n];
    let mut stack: Vec<u32> = (0..num_states).filter(|&q| finals[q as usize]).collect();
    if stack.is_empty() {
        return Err(Error::InvariantViolated("no final states".into()));
    }
    for &q in &stack {
        coreach[q as usize] = true;
    }
    while let Some(q) = stack.pop() {
        for &p in &rev[q as usize] {
            if !coreach[p as usize] {
                coreach[p as usize] = true;
                stack.push(p);
            }
        }
    }
    if coreach.iter().any(|c| !c) {
        return Err(Error::InvariantViolated(
            "not trimmed: state cannot reach a final state".into(),
        ));
    }

    // All finals at one depth, and finals are exactly the sinks.
    let final_levels: Vec<u32> = (0..n)
        .filter(|&q| finals[q])
        .map(|q| level[q].unwrap())
        .collect();
    let ell = final_levels[0];
    if final_levels.iter().any(|&l| l != ell) {
        return Err(Error::InvariantViolated(
            "not leveled: final states at mixed depths".into(),
        ));
    }
    for (q, &f) in finals.iter().enumerate() {
        let has_out = !adj[q].is_empty();
        if f && has_out {
            return Err(Error::InvariantViolated(format!(
                "final state {q} has outgoing transitions"
            )));
        }
        if !f && !has_out {
            return Err(Error::InvariantViolated(format!(
                "non-final state {q} has no outgoing transitions"
            )));
        }
    }

    let levels: Vec<u32> = level.into_iter().map(|l| l.unwrap()).collect();
    Ok((levels, ell as usize))
}

impl<W: Weight> Machine<W> {
    /// Assembles a machine from parsed parts, validating every invariant.
    /// State ids are kept as given so files round-trip unchanged.
    pub(crate) fn from_validated_parts(
        alphabet: Alphabet,
        num_states: u32,
        finals: Vec<bool>,
        mut transitions: Vec<Transition<W>>,
    ) -> Result<Self> {
        let (levels, ell) = validate_parts(&alphabet, num_states, &finals, &transitions)?;
        transitions.sort_by_key(|t| (t.src, t.sym));
        let mut out_index = vec![0u32; num_states as usize + 1];
        for t in &transitions {
            out_index[t.src as usize + 1] += 1;
        }
        for i in 0..num_states as usize {
            out_index[i + 1] += out_index[i];
        }
        let string_len = if num_states == 0 { None } else { Some(ell) };
        Ok(Machine {
            alphabet,
            num_states,
            finals,
            transitions,
            out_index,
            levels,
            string_len,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn singleton_chain() {
        let m = Wfsm::singleton(&ab(), "ab", Rational::one()).unwrap();
        assert_eq!(m.stats().num_states, 3);
        assert_eq!(m.stats().num_transitions, 2);
        assert!(m.weight_of("ab").is_one());
        assert!(m.weight_of("ba").is_zero());
        assert_eq!(m.string_len(), Some(2));
    }

    #[test]
    fn singleton_weight_round_trip() {
        let m = Wfsm::singleton(&ab(), "ab", rat(1, 7)).unwrap();
        assert_eq!(m.weight_of("ab"), rat(1, 7));
        let m = Wfsm::singleton(&Alphabet::new("ab").unwrap(), "aba", rat(2, 3)).unwrap();
        assert_eq!(m.weight_of("aba"), rat(2, 3));
    }

    #[test]
    fn empty_string_singleton() {
        let m = Wfsm::singleton(&ab(), "", Rational::one()).unwrap();
        assert!(m.weight_of("").is_one());
        assert_eq!(m.string_len(), Some(0));
        assert_eq!(m.count_strings().unwrap(), 1);
        // Any other empty-string weight is unrepresentable without final
        // weights and must be rejected.
        assert!(matches!(
            Wfsm::singleton(&ab(), "", rat(2, 1)),
            Err(Error::UnrepresentableEmptyWeight(_))
        ));
    }

    #[test]
    fn singleton_rejects_foreign_symbols_and_zero_weight() {
        assert!(matches!(
            Wfsm::singleton(&ab(), "ax", Rational::one()),
            Err(Error::SymbolNotInAlphabet { symbol: 'x', .. })
        ));
        assert!(Wfsm::singleton(&ab(), "ab", Rational::zero()).is_err());
    }

    #[test]
    fn empty_machine_behaviour() {
        let m = Wfsm::empty(ab());
        assert_eq!(m.stats(), FsmStats { num_states: 0, num_transitions: 0 });
        assert_eq!(m.count_strings().unwrap(), 0);
        assert!(m.total_weight().is_zero());
        assert!(m.enumerate(10).unwrap().is_empty());
        assert!(m.weight_of("ab").is_zero());
    }

    #[test]
    fn enumeration_follows_alphabet_order() {
        // Alphabet "ba" reverses the usual order: 'b' sorts before 'a'.
        let alpha = Alphabet::new("ba").unwrap();
        let mut b = Builder::new(alpha);
        let s0 = b.add_state();
        let s1 = b.add_state();
        b.add_transition(s0, s1, 0, Rational::one()); // 'b'
        b.add_transition(s0, s1, 1, rat(2, 1)); // 'a'
        b.mark_final(s1);
        let m = b.finish(s0);
        let strings = m.enumerate(10).unwrap();
        assert_eq!(
            strings,
            vec![
                ("b".to_string(), Rational::one()),
                ("a".to_string(), rat(2, 1))
            ]
        );
    }

    #[test]
    fn trim_removes_dead_branches() {
        let alpha = ab();
        let mut b = Builder::new(alpha);
        let s0 = b.add_state();
        let s1 = b.add_state();
        let dead = b.add_state();
        b.add_transition(s0, s1, 0, Rational::one());
        b.add_transition(s0, dead, 1, Rational::one());
        b.mark_final(s1);
        let m = b.finish(s0);
        assert_eq!(m.stats(), FsmStats { num_states: 2, num_transitions: 1 });
    }

    #[test]
    fn from_weighted_strings_builds_the_literal_set() {
        let pairs = vec![
            ("aa".to_string(), rat(2, 1)),
            ("ab".to_string(), rat(-1, 3)),
            ("ba".to_string(), rat(1, 1)),
        ];
        let m = Wfsm::from_weighted_strings(&ab(), &pairs).unwrap();
        for (s, w) in &pairs {
            assert_eq!(m.weight_of(s), w.clone());
        }
        assert!(m.weight_of("bb").is_zero());
        assert_eq!(m.count_strings().unwrap(), 3);

        assert!(Wfsm::from_weighted_strings(&ab(), &[("a".into(), rat(1, 1)), ("aa".into(), rat(1, 1))]).is_err());
        assert!(Wfsm::from_weighted_strings(&ab(), &[("a".into(), rat(1, 1)), ("a".into(), rat(2, 1))]).is_err());
        assert!(Wfsm::from_weighted_strings(&ab(), &[("a".into(), Rational::zero())]).is_err());
        assert!(Wfsm::from_weighted_strings::<>(&ab(), &[]).unwrap().is_empty());
    }

    #[test]
    fn totals_and_counts() {
        let alpha = ab();
        let mut b = Builder::new(alpha);
        let s0 = b.add_state();
        let mid = b.add_state();
        let f = b.add_state();
        b.add_transition(s0, mid, 0, rat(1, 3));
        b.add_transition(s0, mid, 1, rat(2, 3));
        b.add_transition(mid, f, 0, Rational::one());
        b.mark_final(f);
        let m = b.finish(s0);
        // {aa -> 1/3, ba -> 2/3}
        assert_eq!(m.count_strings().unwrap(), 2);
        assert!(m.total_weight().is_one());
    }
}
