//! Power-commutator presentations and their text format.
//!
//! Generators are indexed from 0 in code and printed as `a1`, `a2`, ... in
//! files and messages.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A word in the generators, not necessarily collected.
///
/// Factors are `(generator, exponent)` pairs; exponents may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    factors: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(factors: Vec<(usize, i64)>) -> Self {
        let mut w = Self::identity();
        for (g, e) in factors {
            w.push(g, e);
        }
        w
    }

    pub fn generator(g: usize) -> Self {
        Self::power_of(g, 1)
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        Self::new(vec![(g, e)])
    }

    pub fn factors(&self) -> &[(usize, i64)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn len(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Appends `g^e`, merging with the last factor when it is the same generator.
    pub fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.factors.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.factors.pop();
                }
                return;
            }
        }
        self.factors.push((g, e));
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.factors {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::identity();
        for &(g, e) in self.factors.iter().rev() {
            w.push(g, -e);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Left-normed commutator `[w1, w2, ..., wk]`.
    pub fn left_normed(words: &[Word]) -> Word {
        let mut it = words.iter();
        let mut acc = it.next().cloned().unwrap_or_default();
        for w in it {
            acc = Word::commutator(&acc, w);
        }
        acc
    }

    /// `self^other = other^-1 self other`.
    pub fn conjugate(&self, other: &Word) -> Word {
        other.inverse().mul(self).mul(other)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.factors.iter().map(|&(g, _)| g).max()
    }

    /// True when indices strictly increase and every exponent lies in `[1, p-1]`.
    pub fn is_normal(&self, p: u32) -> bool {
        self.factors.windows(2).all(|w| w[0].0 < w[1].0)
            && self.factors.iter().all(|&(_, e)| e >= 1 && e < p as i64)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "a{}", g + 1)?;
            } else {
                write!(f, "a{}^{}", g + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A refined power-commutator presentation: every generator has relative order `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    name: String,
    prime: u32,
    ngens: usize,
    powers: BTreeMap<usize, Word>,
    commutators: BTreeMap<(usize, usize), Word>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PcPresentation {
    /// Assembles a presentation without validating it; see [`PcPresentation::validate`].
    pub fn from_parts(
        name: impl Into<String>,
        prime: u32,
        ngens: usize,
        powers: BTreeMap<usize, Word>,
        commutators: BTreeMap<(usize, usize), Word>,
    ) -> Self {
        Self {
            name: name.into(),
            prime,
            ngens,
            powers: powers.into_iter().filter(|(_, w)| !w.is_empty()).collect(),
            commutators: commutators.into_iter().filter(|(_, w)| !w.is_empty()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    /// Tail of `a_i^p`; the empty word when the power is trivial.
    pub fn power(&self, i: usize) -> Word {
        self.powers.get(&i).cloned().unwrap_or_default()
    }

    /// Tail of `[a_j, a_i]` for `j > i`.
    pub fn commutator(&self, j: usize, i: usize) -> Word {
        self.commutators.get(&(j, i)).cloned().unwrap_or_default()
    }

    pub fn powers(&self) -> &BTreeMap<usize, Word> {
        &self.powers
    }

    pub fn commutators(&self) -> &BTreeMap<(usize, usize), Word> {
        &self.commutators
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn set_power(&mut self, i: usize, tail: Word) {
        if tail.is_empty() {
            self.powers.remove(&i);
        } else {
            self.powers.insert(i, tail);
        }
    }

    pub fn set_commutator(&mut self, j: usize, i: usize, tail: Word) {
        if tail.is_empty() {
            self.commutators.remove(&(j, i));
        } else {
            self.commutators.insert((j, i), tail);
        }
    }

    /// Structural checks: prime, index ordering and canonical tails.
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.prime as u64) {
            return Err(Error::NotPrime(self.prime as u64));
        }
        if self.ngens == 0 || self.ngens > 32 {
            return Err(Error::Syntax {
                line: 0,
                msg: format!("ngens must lie in [1, 32], got {}", self.ngens),
            });
        }
        for (&i, tail) in &self.powers {
            self.check_tail(0, &format!("pow {}", i + 1), i, i, tail)?;
        }
        for (&(j, i), tail) in &self.commutators {
            let rel = format!("comm {} {}", j + 1, i + 1);
            if j <= i {
                return Err(Error::IndexOrder {
                    line: 0,
                    relation: rel,
                    tail: j + 1,
                    bound: i + 1,
                });
            }
            self.check_tail(0, &rel, j, j.max(i), tail)?;
        }
        Ok(())
    }

    fn check_tail(&self, line: usize, rel: &str, key: usize, bound: usize, tail: &Word) -> Result<()> {
        if key >= self.ngens {
            return Err(Error::GeneratorRange {
                index: key + 1,
                ngens: self.ngens,
            });
        }
        let mut prev: Option<usize> = None;
        for &(g, e) in tail.factors() {
            if g >= self.ngens {
                return Err(Error::GeneratorRange {
                    index: g + 1,
                    ngens: self.ngens,
                });
            }
            if g <= bound {
                return Err(Error::IndexOrder {
                    line,
                    relation: rel.to_string(),
                    tail: g + 1,
                    bound: bound + 1,
                });
            }
            if prev.is_some_and(|q| q >= g) {
                return Err(Error::Syntax {
                    line,
                    msg: format!("{rel}: generator indices must strictly increase"),
                });
            }
            if e < 1 || e >= self.prime as i64 {
                return Err(Error::ExponentRange {
                    line,
                    generator: g + 1,
                    exponent: e,
                    max: self.prime - 1,
                });
            }
            prev = Some(g);
        }
        Ok(())
    }

    /// Parses the line-oriented presentation format.
    ///
    /// ```text
    /// group ES27
    /// prime 3
    /// ngens 3
    /// comm 2 1 = a3
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut prime = None;
        let mut ngens = None;
        let mut powers = BTreeMap::new();
        let mut comms = BTreeMap::new();
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Syntax { line, msg };
            let mut tokens = content.split_whitespace();
            let keyword = tokens.next().unwrap_or_default();
            match keyword {
                "group" => {
                    let id = tokens.next().ok_or_else(|| syntax("missing group name".into()))?;
                    if tokens.next().is_some() {
                        return Err(syntax("trailing tokens after group name".into()));
                    }
                    if !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                        return Err(syntax(format!("invalid identifier {id:?}")));
                    }
                    name = Some(id.to_string());
                }
                "prime" | "ngens" => {
                    let tok = tokens.next().ok_or_else(|| syntax(format!("missing value for {keyword}")))?;
                    let value: u64 = tok
                        .parse()
                        .map_err(|_| syntax(format!("{keyword} expects a positive integer, got {tok:?}")))?;
                    if tokens.next().is_some() {
                        return Err(syntax(format!("trailing tokens after {keyword}")));
                    }
                    if keyword == "prime" {
                        if !is_prime(value) {
                            return Err(Error::NotPrime(value));
                        }
                        prime = Some(u32::try_from(value).map_err(|_| syntax("prime too large".into()))?);
                    } else {
                        if value == 0 || value > 32 {
                            return Err(syntax(format!("ngens must lie in [1, 32], got {value}")));
                        }
                        ngens = Some(value as usize);
                    }
                }
                "pow" | "comm" => {
                    let (p, n) = match (prime, ngens) {
                        (Some(p), Some(n)) => (p, n),
                        _ => return Err(syntax(format!("{keyword} before prime and ngens"))),
                    };
                    let rest: Vec<&str> = tokens.collect();
                    let eq = rest
                        .iter()
                        .position(|&t| t == "=")
                        .ok_or_else(|| syntax("missing '='".into()))?;
                    let keys = rest[..eq]
                        .iter()
                        .map(|t| parse_index(t, n, line))
                        .collect::<Result<Vec<_>>>()?;
                    let tail = parse_word(&rest[eq + 1..], p, n, line)?;
                    let pres = Self::from_parts("", p, n, BTreeMap::new(), BTreeMap::new());
                    if keyword == "pow" {
                        let [i] = keys[..] else {
                            return Err(syntax("pow expects one index".into()));
                        };
                        pres.check_tail(line, &format!("pow {}", i + 1), i, i, &tail)?;
                        if powers.insert(i, tail).is_some() {
                            return Err(syntax(format!("duplicate pow {}", i + 1)));
                        }
                    } else {
                        let [j, i] = keys[..] else {
                            return Err(syntax("comm expects two indices".into()));
                        };
                        let rel = format!("comm {} {}", j + 1, i + 1);
                        if j <= i {
                            return Err(Error::IndexOrder {
                                line,
                                relation: rel,
                                tail: j + 1,
                                bound: i + 1,
                            });
                        }
                        pres.check_tail(line, &rel, j, j, &tail)?;
                        if comms.insert((j, i), tail).is_some() {
                            return Err(syntax(format!("duplicate {rel}")));
                        }
                    }
                }
                other => return Err(syntax(format!("unknown keyword {other:?}"))),
            }
        }

        let missing = |what: &str| Error::Syntax {
            line: last_line,
            msg: format!("missing '{what}' line"),
        };
        let pres = Self::from_parts(
            name.ok_or_else(|| missing("group"))?,
            prime.ok_or_else(|| missing("prime"))?,
            ngens.ok_or_else(|| missing("ngens"))?,
            powers,
            comms,
        );
        pres.validate()?;
        Ok(pres)
    }

    /// Renders the presentation in the format accepted by [`PcPresentation::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("group {}\nprime {}\nngens {}\n", self.name, self.prime, self.ngens);
        for (i, w) in &self.powers {
            out.push_str(&format!("pow {} = {}\n", i + 1, w));
        }
        for ((j, i), w) in &self.commutators {
            out.push_str(&format!("comm {} {} = {}\n", j + 1, i + 1, w));
        }
        out
    }
}

fn parse_index(tok: &str, ngens: usize, line: usize) -> Result<usize> {
    let k: usize = tok.parse().map_err(|_| Error::Syntax {
        line,
        msg: format!("expected generator index, got {tok:?}"),
    })?;
    if k == 0 || k > ngens {
        return Err(Error::GeneratorRange { index: k, ngens });
    }
    Ok(k - 1)
}

fn parse_word(tokens: &[&str], p: u32, ngens: usize, line: usize) -> Result<Word> {
    let syntax = |msg: String| Error::Syntax { line, msg };
    match tokens {
        [] => return Err(syntax("missing word after '='".into())),
        ["1"] => return Ok(Word::identity()),
        _ => {}
    }
    let mut factors = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let body = tok
            .strip_prefix('a')
            .ok_or_else(|| syntax(format!("bad factor {tok:?}")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let g = parse_index(idx, ngens, line)?;
        let e: i64 = exp.parse().map_err(|_| syntax(format!("bad exponent in {tok:?}")))?;
        if e < 1 || e >= p as i64 {
            return Err(Error::ExponentRange {
                line,
                generator: g + 1,
                exponent: e,
                max: p - 1,
            });
        }
        if factors.last().is_some_and(|&(q, _)| q >= g) {
            return Err(syntax("generator indices must strictly increase".into()));
        }
        factors.push((g, e));
    }
    Ok(Word { factors })
}
