//! Monomials in colored, indexed matrix symbols and their pair-matched words.
//!
//! A monomial such as `T1 H1 T1 H1` fixes, position by position, a color
//! (link kind) and an index (which independent copy). A word assigns letters
//! to positions so that equal letters mark positions whose L-values must match;
//! letters are named `a, b, c, ...` in order of first occurrence.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::link::LinkKind;

/// One symbol `Z_{color, index}` of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub kind: LinkKind,
    pub index: u32,
}

impl Letter {
    pub fn new(kind: LinkKind, index: u32) -> Self {
        Letter { kind, index }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.code(), self.index)
    }
}

/// An ordered product of matrix symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    letters: Vec<Letter>,
}

impl Monomial {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyMonomial);
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0) {
            return Err(Error::BadIndex(format!("{}0", l.kind.code())));
        }
        Ok(Monomial { letters })
    }

    /// Parses `"THTH"`, `"W1 T1 W2 T1"` or `"W1T1W2T1"`.
    ///
    /// Each symbol is a kind character followed by optional index digits; a
    /// bare kind character means index 1. Whitespace between symbols is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let kind = LinkKind::from_code(c)?;
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let index = if digits.is_empty() {
                1
            } else {
                match digits.parse::<u32>() {
                    Ok(i) if i > 0 => i,
                    _ => return Err(Error::BadIndex(format!("{c}{digits}"))),
                }
            };
            letters.push(Letter { kind, index });
        }
        Monomial::new(letters)
    }

    /// A single-index monomial from a string of kind codes.
    pub fn from_kinds(kinds: &[LinkKind]) -> Result<Self> {
        Monomial::new(kinds.iter().map(|&k| Letter::new(k, 1)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn kinds(&self) -> impl Iterator<Item = LinkKind> + '_ {
        self.letters.iter().map(|l| l.kind)
    }

    /// The monomial `ψ(q)` with every index set to 1.
    pub fn drop_indices(&self) -> Monomial {
        Monomial {
            letters: self.letters.iter().map(|l| Letter::new(l.kind, 1)).collect(),
        }
    }

    /// The monomial read from position `shift` onwards, cyclically.
    pub fn rotate(&self, shift: usize) -> Monomial {
        let mut letters = self.letters.clone();
        letters.rotate_left(shift % self.len());
        Monomial { letters }
    }

    /// Multiplicity of every distinct symbol.
    pub fn symbol_counts(&self) -> HashMap<Letter, usize> {
        let mut counts = HashMap::new();
        for &l in &self.letters {
            *counts.entry(l).or_insert(0) += 1;
        }
        counts
    }

    /// Largest Property B bound among the kinds present.
    pub fn delta(&self) -> usize {
        self.kinds().map(LinkKind::delta).max().unwrap_or(1)
    }

    /// Kind codes only, e.g. `"THTH"`.
    pub fn color_string(&self) -> String {
        self.kinds().map(LinkKind::code).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|l| l.index == 1) {
            write!(f, "{}", self.color_string())
        } else {
            let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Monomial::parse(s)
    }
}

/// A match `(i, j)`, `i < j`: the only two positions sharing a letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatchPair {
    pub i: usize,
    pub j: usize,
}

/// A colored (and indexed) word: a letter per position of its monomial.
///
/// Letter ids are canonical (0 = `a`, assigned in order of first occurrence)
/// and positions sharing a letter share color and index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredWord {
    letters: Vec<u8>,
    monomial: Monomial,
}

/// JSON view of a word.
#[derive(Debug, Clone, Serialize)]
pub struct WordRecord {
    pub word: String,
    pub colors: String,
    pub indices: Vec<u32>,
    pub catalan: bool,
}

fn canonicalize(raw: &[usize]) -> Vec<u8> {
    let mut names: HashMap<usize, u8> = HashMap::new();
    raw.iter()
        .map(|r| {
            let next = names.len() as u8;
            *names.entry(*r).or_insert(next)
        })
        .collect()
}

impl ColoredWord {
    /// Builds a word from its letter string (e.g. `"abab"`) over `monomial`.
    pub fn new(word: &str, monomial: &Monomial) -> Result<Self> {
        let raw: Vec<char> = word.trim().chars().collect();
        if raw.len() != monomial.len() {
            return Err(Error::InvalidWord(format!(
                "word '{word}' has length {} but monomial {monomial} has length {}",
                raw.len(),
                monomial.len()
            )));
        }
        if let Some(c) = raw.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::InvalidWord(format!("letter '{c}' in '{word}' is not a-z")));
        }
        let letters = canonicalize(&raw.iter().map(|&c| c as usize).collect::<Vec<_>>());
        if letters.iter().zip(&raw).any(|(&l, &c)| (b'a' + l) as char != c) {
            return Err(Error::InvalidWord(format!(
                "'{word}' does not name letters in order of first occurrence"
            )));
        }
        let mut symbol: HashMap<u8, Letter> = HashMap::new();
        for (pos, &l) in letters.iter().enumerate() {
            let here = monomial.letters()[pos];
            if let Some(prev) = symbol.insert(l, here) {
                if prev != here {
                    return Err(Error::InvalidWord(format!(
                        "letter '{}' of '{word}' joins {prev} with {here}",
                        (b'a' + l) as char
                    )));
                }
            }
        }
        Ok(ColoredWord {
            letters,
            monomial: monomial.clone(),
        })
    }

    /// Convenience for the common single-index case: `ColoredWord::parse("abab", "THTH")`.
    pub fn parse(word: &str, monomial: &str) -> Result<Self> {
        ColoredWord::new(word, &Monomial::parse(monomial)?)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }

    /// Canonical letter ids, 0 for `a`.
    pub fn letter_ids(&self) -> &[u8] {
        &self.letters
    }

    pub fn color(&self, pos: usize) -> LinkKind {
        self.monomial.letters()[pos].kind
    }

    pub fn letter_count(&self) -> usize {
        self.letters.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Letter string, e.g. `"abab"`.
    pub fn text(&self) -> String {
        self.letters.iter().map(|&l| (b'a' + l) as char).collect()
    }

    /// True when every letter occurs exactly twice.
    pub fn is_pair_matched(&self) -> bool {
        let mut counts = vec![0usize; self.letter_count()];
        for &l in &self.letters {
            counts[l as usize] += 1;
        }
        counts.iter().all(|&c| c == 2)
    }

    /// Match pairs sorted by first position; empty unless pair-matched.
    pub fn match_pairs(&self) -> Vec<MatchPair> {
        if !self.is_pair_matched() {
            return Vec::new();
        }
        let mut first = vec![usize::MAX; self.letter_count()];
        let mut pairs = Vec::with_capacity(self.len() / 2);
        for (pos, &l) in self.letters.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = pos;
            } else {
                pairs.push(MatchPair { i: *f, j: pos });
            }
        }
        pairs.sort();
        pairs
    }

    /// Partner position of every position (pair-matched words only).
    pub fn partners(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.len()];
        for p in self.match_pairs() {
            out[p.i] = p.j;
            out[p.j] = p.i;
        }
        out
    }

    /// Whether repeated deletion of adjacent double letters empties the word.
    pub fn is_catalan(&self) -> bool {
        if !self.is_pair_matched() {
            return false;
        }
        let mut stack: Vec<u8> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if stack.last() == Some(&l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        stack.is_empty()
    }

    /// The same word over `ψ(q)`: indices dropped, letters unchanged.
    pub fn drop_indices(&self) -> ColoredWord {
        ColoredWord {
            letters: self.letters.clone(),
            monomial: self.monomial.drop_indices(),
        }
    }

    /// The word `w'[i] = w[(i + shift) mod len]` with letters renamed canonically.
    pub fn cyclic_rotate(&self, shift: usize) -> ColoredWord {
        let mut raw: Vec<usize> = self.letters.iter().map(|&l| l as usize).collect();
        let shift = shift % self.len().max(1);
        raw.rotate_left(shift);
        ColoredWord {
            letters: canonicalize(&raw),
            monomial: self.monomial.rotate(shift),
        }
    }

    pub fn record(&self) -> WordRecord {
        WordRecord {
            word: self.text(),
            colors: self.monomial.color_string(),
            indices: self.monomial.letters().iter().map(|l| l.index).collect(),
            catalan: self.is_catalan(),
        }
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.text(), self.monomial)
    }
}

/// All pair-matched words of `q`.
///
/// Matched positions share color, and also index when `respect_indices` is set.
/// Odd length or an odd-sized class yields no words. Words come out in the
/// order generated by pairing the earliest open position with each admissible
/// later position in turn.
pub fn enumerate_pair_matched_words(q: &Monomial, respect_indices: bool) -> Vec<ColoredWord> {
    let len = q.len();
    if len % 2 == 1 {
        return Vec::new();
    }
    let class: Vec<Letter> = if respect_indices {
        q.letters().to_vec()
    } else {
        q.drop_indices().letters().to_vec()
    };
    let mut counts: HashMap<Letter, usize> = HashMap::new();
    for &c in &class {
        *counts.entry(c).or_insert(0) += 1;
    }
    if counts.values().any(|c| c % 2 == 1) {
        return Vec::new();
    }

    fn recurse(class: &[Letter], letters: &mut Vec<Option<u8>>, next: u8, out: &mut Vec<Vec<u8>>) {
        let Some(first) = letters.iter().position(Option::is_none) else {
            out.push(letters.iter().map(|l| l.unwrap()).collect());
            return;
        };
        letters[first] = Some(next);
        for j in (first + 1)..class.len() {
            if letters[j].is_none() && class[j] == class[first] {
                letters[j] = Some(next);
                recurse(class, letters, next + 1, out);
                letters[j] = None;
            }
        }
        letters[first] = None;
    }

    let mut raw = Vec::new();
    recurse(&class, &mut vec![None; len], 0, &mut raw);
    raw.into_iter()
        .map(|letters| ColoredWord {
            letters,
            monomial: q.clone(),
        })
        .collect()
}

/// Cyclic rotation, as a free function.
pub fn cyclic_rotate(w: &ColoredWord, shift: usize) -> ColoredWord {
    w.cyclic_rotate(shift)
}

/// `true` when no two pairs interleave as `a < c < b < d`.
pub fn pairs_noncrossing(pairs: &[MatchPair]) -> bool {
    pairs
        .iter()
        .all(|p| pairs.iter().all(|r| !(p.i < r.i && r.i < p.j && p.j < r.j)))
}
