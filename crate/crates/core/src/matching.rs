//! Matching rules and the detector machines they induce.
//!
//! A rule fixes the universe alphabet, the string length, and a predicate
//! saying which detectors recognize which strings. [`MatchingRule::matches`]
//! evaluates that predicate directly on a pair of strings — it is the
//! brute-force oracle and deliberately shares no code with the automaton
//! constructions it is used to check. [`MatchingRule::co_pattern`] builds the
//! machine of all detectors recognizing one string, and
//! [`MatchingRule::universe`] the machine of all detectors, optionally
//! carrying product-form bias weights.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::machine::{Alphabet, Builder, Wfsm};
use crate::{Error, Rational, Result};

pub const DEFAULT_WILDCARD: char = '#';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// Detectors over the alphabet plus a wildcard symbol; a detector matches
    /// a string when every position agrees or holds the wildcard.
    Wildcard,
    /// A detector matches when it shares a contiguous window of at least `r`
    /// positions with the string. Larger radius means fewer matches.
    Contiguous,
    /// A detector matches strings within Hamming distance `r`. Larger radius
    /// means more matches.
    Hamming,
}

impl RuleKind {
    fn name(self) -> &'static str {
        match self {
            RuleKind::Wildcard => "wildcard",
            RuleKind::Contiguous => "contiguous",
            RuleKind::Hamming => "hamming",
        }
    }
}

/// A fully specified matching rule: alphabet, string length, kind, radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingRule {
    kind: RuleKind,
    alphabet: Alphabet,
    detector_alphabet: Alphabet,
    len: usize,
    radius: usize,
    wild: char,
}

impl MatchingRule {
    fn validate_common(alphabet: &Alphabet, len: usize) -> Result<()> {
        if len == 0 {
            return Err(Error::Config("rule length must be at least 1".into()));
        }
        if alphabet.len() < 2 {
            return Err(Error::Config(
                "rule alphabet must have at least 2 symbols".into(),
            ));
        }
        for c in alphabet.symbols() {
            if matches!(c, ',' | '=' | ':') {
                return Err(Error::Config(format!(
                    "symbol {c:?} would be ambiguous in rule descriptors"
                )));
            }
        }
        Ok(())
    }

    pub fn contiguous(alphabet: Alphabet, len: usize, radius: usize) -> Result<Self> {
        Self::validate_common(&alphabet, len)?;
        if radius < 1 || radius > len {
            return Err(Error::Config(format!(
                "contiguous radius must be in 1..={len}, got {radius}"
            )));
        }
        Ok(MatchingRule {
            kind: RuleKind::Contiguous,
            detector_alphabet: alphabet.clone(),
            alphabet,
            len,
            radius,
            wild: DEFAULT_WILDCARD,
        })
    }

    pub fn hamming(alphabet: Alphabet, len: usize, radius: usize) -> Result<Self> {
        Self::validate_common(&alphabet, len)?;
        if radius > len {
            return Err(Error::Config(format!(
                "hamming radius must be in 0..={len}, got {radius}"
            )));
        }
        Ok(MatchingRule {
            kind: RuleKind::Hamming,
            detector_alphabet: alphabet.clone(),
            alphabet,
            len,
            radius,
            wild: DEFAULT_WILDCARD,
        })
    }

    pub fn wildcard(alphabet: Alphabet, len: usize) -> Result<Self> {
        Self::wildcard_with(alphabet, len, DEFAULT_WILDCARD)
    }

    pub fn wildcard_with(alphabet: Alphabet, len: usize, wild: char) -> Result<Self> {
        Self::validate_common(&alphabet, len)?;
        if alphabet.contains(wild) {
            return Err(Error::Config(format!(
                "wildcard symbol {wild:?} collides with the alphabet"
            )));
        }
        let detector_alphabet = Alphabet::new(&format!("{alphabet}{wild}"))?;
        Ok(MatchingRule {
            kind: RuleKind::Wildcard,
            alphabet,
            detector_alphabet,
            len,
            radius: 0,
            wild,
        })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    /// The universe alphabet of the strings being classified.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The alphabet detectors are written in (adds the wildcard symbol for
    /// the wildcard rule).
    pub fn detector_alphabet(&self) -> &Alphabet {
        &self.detector_alphabet
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn check_universe_string(&self, x: &str) -> Result<Vec<char>> {
        let chars: Vec<char> = x.chars().collect();
        if chars.len() != self.len {
            return Err(Error::BadStringLength {
                string: x.to_string(),
                got: chars.len(),
                expected: self.len,
            });
        }
        for &c in &chars {
            if !self.alphabet.contains(c) {
                return Err(Error::SymbolNotInAlphabet {
                    symbol: c,
                    alphabet: self.alphabet.to_string(),
                });
            }
        }
        Ok(chars)
    }

    fn check_detector_string(&self, d: &str) -> Result<Vec<char>> {
        let chars: Vec<char> = d.chars().collect();
        if chars.len() != self.len {
            return Err(Error::BadStringLength {
                string: d.to_string(),
                got: chars.len(),
                expected: self.len,
            });
        }
        for &c in &chars {
            if !self.detector_alphabet.contains(c) {
                return Err(Error::SymbolNotInAlphabet {
                    symbol: c,
                    alphabet: self.detector_alphabet.to_string(),
                });
            }
        }
        Ok(chars)
    }

    /// Direct evaluation of the rule predicate: does detector `d` recognize
    /// string `x`? This is the brute-force oracle; it never touches the
    /// machine code.
    pub fn matches(&self, d: &str, x: &str) -> Result<bool> {
        let d = self.check_detector_string(d)?;
        let x = self.check_universe_string(x)?;
        Ok(match self.kind {
            RuleKind::Wildcard => d
                .iter()
                .zip(&x)
                .all(|(&dc, &xc)| dc == xc || dc == self.wild),
            RuleKind::Hamming => d.iter().zip(&x).filter(|(dc, xc)| dc != xc).count() <= self.radius,
            RuleKind::Contiguous => {
                let r = self.radius;
                (0..=self.len - r).any(|i| (i..i + r).all(|j| d[j] == x[j]))
            }
        })
    }

    /// The machine of all detectors recognizing `s`, with unit weights.
    pub fn co_pattern(&self, s: &str) -> Result<Wfsm> {
        let s = self.check_universe_string(s)?;
        let machine = match self.kind {
            RuleKind::Wildcard => self.wildcard_co_pattern(&s),
            RuleKind::Hamming => self.hamming_co_pattern(&s),
            RuleKind::Contiguous => self.contiguous_co_pattern(&s),
        };
        Ok(machine.minimize())
    }

    fn wildcard_co_pattern(&self, s: &[char]) -> Wfsm {
        let mut b = Builder::new(self.detector_alphabet.clone());
        let mut cur = b.add_state();
        for &c in s {
            let next = b.add_state();
            let lit = self.detector_alphabet.index_of(c).unwrap();
            let wild = self.detector_alphabet.index_of(self.wild).unwrap();
            b.add_transition(cur, next, lit, Rational::one());
            b.add_transition(cur, next, wild, Rational::one());
            cur = next;
        }
        b.mark_final(cur);
        b.finish(0)
    }

    fn hamming_co_pattern(&self, s: &[char]) -> Wfsm {
        // States track (position, mismatches so far).
        let mut b = Builder::new(self.detector_alphabet.clone());
        let mut ids: HashMap<(usize, usize), u32> = HashMap::new();
        let start = b.add_state();
        ids.insert((0, 0), start);
        for (i, &expected) in s.iter().enumerate() {
            for k in 0..=self.radius.min(i) {
                let Some(&src) = ids.get(&(i, k)) else {
                    continue;
                };
                for c in self.detector_alphabet.symbols() {
                    let k2 = if c == expected { k } else { k + 1 };
                    if k2 > self.radius {
                        continue;
                    }
                    let dst = *ids.entry((i + 1, k2)).or_insert_with(|| b.add_state());
                    let sym = self.detector_alphabet.index_of(c).unwrap();
                    b.add_transition(src, dst, sym, Rational::one());
                }
            }
        }
        for k in 0..=self.radius {
            if let Some(&q) = ids.get(&(self.len, k)) {
                b.mark_final(q);
            }
        }
        b.finish(start)
    }

    fn contiguous_co_pattern(&self, s: &[char]) -> Wfsm {
        // States track (position, current agreement run) until the run
        // reaches the radius, after which the remaining symbols are free.
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum St {
            Running(usize, usize),
            Satisfied(usize),
        }
        let mut b = Builder::new(self.detector_alphabet.clone());
        let mut ids: HashMap<St, u32> = HashMap::new();
        let start = b.add_state();
        ids.insert(St::Running(0, 0), start);
        let mut frontier = vec![St::Running(0, 0)];
        while let Some(st) = frontier.pop() {
            let src = ids[&st];
            let (i, run) = match st {
                St::Satisfied(i) if i < self.len => {
                    for c in self.detector_alphabet.symbols() {
                        let next = St::Satisfied(i + 1);
                        let dst = *ids.entry(next).or_insert_with(|| {
                            frontier.push(next);
                            b.add_state()
                        });
                        let sym = self.detector_alphabet.index_of(c).unwrap();
                        b.add_transition(src, dst, sym, Rational::one());
                    }
                    continue;
                }
                St::Satisfied(_) => continue,
                St::Running(i, _) if i == self.len => continue,
                St::Running(i, run) => (i, run),
            };
            for c in self.detector_alphabet.symbols() {
                let next = if c == s[i] {
                    if run + 1 >= self.radius {
                        St::Satisfied(i + 1)
                    } else {
                        St::Running(i + 1, run + 1)
                    }
                } else {
                    St::Running(i + 1, 0)
                };
                let dst = *ids.entry(next).or_insert_with(|| {
                    frontier.push(next);
                    b.add_state()
                });
                let sym = self.detector_alphabet.index_of(c).unwrap();
                b.add_transition(src, dst, sym, Rational::one());
            }
        }
        if let Some(&q) = ids.get(&St::Satisfied(self.len)) {
            b.mark_final(q);
        }
        b.finish(start)
    }

    /// The machine of all possible detectors: the minimal leveled chain over
    /// the detector alphabet. Without bias every detector has weight 1; with
    /// bias, detector `d` weighs the product of its per-position factors.
    pub fn universe(&self, bias: Option<&BiasTable>) -> Result<Wfsm> {
        if let Some(b) = bias {
            b.check_shape(self)?;
        }
        let mut b = Builder::new(self.detector_alphabet.clone());
        let mut cur = b.add_state();
        for pos in 0..self.len {
            let next = b.add_state();
            for sym in 0..self.detector_alphabet.len() as u8 {
                let w = match bias {
                    Some(table) => table.factor(pos, sym).clone(),
                    None => Rational::one(),
                };
                b.add_transition(cur, next, sym, w);
            }
            cur = next;
        }
        b.mark_final(cur);
        Ok(b.finish(0))
    }

    /// `|m^-1(t)|`, which is the same for every `t` under these rules;
    /// computed on a fixed reference string.
    pub fn matched_set_size(&self) -> Result<u64> {
        let c = self.alphabet.symbols().next().expect("nonempty alphabet");
        let reference: String = std::iter::repeat_n(c, self.len).collect();
        self.co_pattern(&reference)?.count_strings()
    }
}

impl fmt::Display for MatchingRule {
    /// Canonical descriptor, e.g. `contiguous:r=5,len=8,alphabet=01`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RuleKind::Wildcard => {
                write!(f, "wildcard:len={},alphabet={}", self.len, self.alphabet)?;
                if self.wild != DEFAULT_WILDCARD {
                    write!(f, ",wild={}", self.wild)?;
                }
                Ok(())
            }
            kind => write!(
                f,
                "{}:r={},len={},alphabet={}",
                kind.name(),
                self.radius,
                self.len,
                self.alphabet
            ),
        }
    }
}

impl FromStr for MatchingRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatchingRule::parse_with_defaults(s, None, None)
    }
}

impl MatchingRule {
    /// Parses a rule descriptor like `contiguous:r=5,len=8,alphabet=01`.
    /// `len`/`alphabet` may be omitted when defaults are supplied (the
    /// experiment commands fill them in).
    pub fn parse_with_defaults(
        descriptor: &str,
        default_len: Option<usize>,
        default_alphabet: Option<&str>,
    ) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidRule {
            descriptor: descriptor.to_string(),
            reason: reason.to_string(),
        };
        let (kind_str, params) = descriptor.split_once(':').unwrap_or((descriptor, ""));
        let mut radius: Option<usize> = None;
        let mut len = default_len;
        let mut alphabet = default_alphabet.map(str::to_string);
        let mut wild = DEFAULT_WILDCARD;
        for part in params.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(&format!("expected key=value, got {part:?}")))?;
            match key {
                "r" => {
                    radius = Some(value.parse().map_err(|_| bad("radius must be an integer"))?)
                }
                "len" => len = Some(value.parse().map_err(|_| bad("len must be an integer"))?),
                "alphabet" => alphabet = Some(value.to_string()),
                "wild" => {
                    let mut chars = value.chars();
                    wild = chars.next().ok_or_else(|| bad("wild must be a character"))?;
                    if chars.next().is_some() {
                        return Err(bad("wild must be a single character"));
                    }
                }
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        let len = len.ok_or_else(|| bad("missing len"))?;
        let alphabet = Alphabet::new(&alphabet.ok_or_else(|| bad("missing alphabet"))?)?;
        match kind_str {
            "wildcard" => {
                if radius.is_some() {
                    return Err(bad("wildcard takes no radius"));
                }
                MatchingRule::wildcard_with(alphabet, len, wild)
            }
            "contiguous" => {
                MatchingRule::contiguous(alphabet, len, radius.ok_or_else(|| bad("missing r"))?)
            }
            "hamming" => {
                MatchingRule::hamming(alphabet, len, radius.ok_or_else(|| bad("missing r"))?)
            }
            other => Err(bad(&format!("unknown rule kind {other:?}"))),
        }
    }
}

/// Per-position, per-symbol positive factors; detector `d` gets weight
/// `prod_i factor(i, d_i)`. Models pre-existing detector generation biases in
/// negative selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiasTable {
    alphabet: Alphabet,
    /// `factors[pos][sym]`, all positive.
    factors: Vec<Vec<Rational>>,
}

impl BiasTable {
    pub fn new(alphabet: Alphabet, factors: Vec<Vec<Rational>>) -> Result<Self> {
        for (pos, row) in factors.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::BiasShape {
                    expected_rows: factors.len(),
                    expected_cols: alphabet.len(),
                    got: format!("row {pos} has {} cells", row.len()),
                });
            }
            for f in row {
                if !f.is_positive() {
                    return Err(Error::NonPositiveBias(f.to_string(), pos));
                }
            }
        }
        Ok(BiasTable { alphabet, factors })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_positions(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, pos: usize, sym: u8) -> &Rational {
        &self.factors[pos][sym as usize]
    }

    /// Product of the factors along `d`; the weight the universe machine
    /// assigns to that detector.
    pub fn weight_of(&self, d: &str) -> Result<Rational> {
        let mut acc = Rational::one();
        let chars: Vec<char> = d.chars().collect();
        if chars.len() != self.num_positions() {
            return Err(Error::BadStringLength {
                string: d.to_string(),
                got: chars.len(),
                expected: self.num_positions(),
            });
        }
        for (pos, c) in chars.into_iter().enumerate() {
            let sym = self
                .alphabet
                .index_of(c)
                .ok_or_else(|| Error::SymbolNotInAlphabet {
                    symbol: c,
                    alphabet: self.alphabet.to_string(),
                })?;
            acc = &acc * self.factor(pos, sym);
        }
        Ok(acc)
    }

    fn check_shape(&self, rule: &MatchingRule) -> Result<()> {
        if self.alphabet != *rule.detector_alphabet() || self.num_positions() != rule.len() {
            return Err(Error::BiasShape {
                expected_rows: rule.len(),
                expected_cols: rule.detector_alphabet().len(),
                got: format!(
                    "{} rows over alphabet {:?}",
                    self.num_positions(),
                    self.alphabet.to_string()
                ),
            });
        }
        Ok(())
    }

    /// CSV form: header `position,<sym>,...`, one row per position, cells as
    /// `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position");
        for c in self.alphabet.symbols() {
            out.push(',');
            out.push(c);
        }
        out.push('\n');
        for (pos, row) in self.factors.iter().enumerate() {
            out.push_str(&pos.to_string());
            for cell in row {
                out.push(',');
                out.push_str(&cell.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::BadInputLine {
            line: 1,
            reason: "empty bias table".into(),
        })?;
        let mut cols = header.split(',');
        if cols.next() != Some("position") {
            return Err(Error::BadInputLine {
                line: 1,
                reason: "bias header must start with `position`".into(),
            });
        }
        let mut symbols = String::new();
        for col in cols {
            let mut chars = col.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::BadInputLine {
                        line: 1,
                        reason: format!("bias column {col:?} is not a single symbol"),
                    })
                }
            }
        }
        let alphabet = Alphabet::new(&symbols)?;
        let mut factors = Vec::new();
        for (idx, raw) in lines {
            let line = raw.trim_end();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let mut cells = line.split(',');
            let pos_field = cells.next().unwrap_or("");
            let pos: usize = pos_field.parse().map_err(|_| Error::BadInputLine {
                line: lineno,
                reason: format!("bad position {pos_field:?}"),
            })?;
            if pos != factors.len() {
                return Err(Error::BadInputLine {
                    line: lineno,
                    reason: format!("positions must be consecutive from 0, got {pos}"),
                });
            }
            let row: Vec<Rational> = cells
                .map(|cell| {
                    Rational::from_str(cell).map_err(|e| Error::BadInputLine {
                        line: lineno,
                        reason: format!("bad factor {cell:?}: {e}"),
                    })
                })
                .collect::<Result<_>>()?;
            factors.push(row);
        }
        BiasTable::new(alphabet, factors)
    }
}
