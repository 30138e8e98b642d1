//! Known word volumes for two-kind monomials, used as golden reference data.

use serde::Serialize;

use crate::algebra::ColoredWord;

/// One reference value: `p(word)` over `monomial` equals `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub monomial: &'static str,
    pub word: &'static str,
    pub num: u32,
    pub den: u32,
}

impl ReferenceRow {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn colored_word(&self) -> ColoredWord {
        ColoredWord::parse(self.word, self.monomial).expect("reference rows are valid words")
    }
}

const fn row(monomial: &'static str, word: &'static str, num: u32, den: u32) -> ReferenceRow {
    ReferenceRow {
        monomial,
        word,
        num,
        den,
    }
}

/// Toeplitz and Hankel.
pub const TOEPLITZ_HANKEL: [ReferenceRow; 14] = [
    row("TTHH", "aabb", 1, 1),
    row("THTH", "abab", 2, 3),
    row("TTTTHH", "aabbcc", 1, 1),
    row("TTTTHH", "abbacc", 1, 1),
    row("TTTTHH", "ababcc", 2, 3),
    row("HHHHTT", "aabbcc", 1, 1),
    row("HHHHTT", "abbacc", 1, 1),
    row("HHHHTT", "ababcc", 0, 1),
    row("TTHTTH", "aabccb", 1, 1),
    row("TTHTTH", "abcbac", 1, 2),
    row("TTHTTH", "abcabc", 1, 2),
    row("HHTHHT", "aabccb", 1, 1),
    row("HHTHHT", "abcbac", 1, 2),
    row("HHTHHT", "abcabc", 0, 1),
];

/// Reverse Circulant and Hankel.
pub const REVERSE_CIRCULANT_HANKEL: [ReferenceRow; 14] = [
    row("RRHH", "aabb", 1, 1),
    row("RHRH", "abab", 0, 1),
    row("RRRRHH", "aabbcc", 1, 1),
    row("RRRRHH", "abbacc", 1, 1),
    row("RRRRHH", "ababcc", 0, 1),
    row("HHHHRR", "aabbcc", 1, 1),
    row("HHHHRR", "abbacc", 1, 1),
    row("HHHHRR", "ababcc", 0, 1),
    row("RRHRRH", "aabccb", 1, 1),
    row("RRHRRH", "abcbac", 0, 1),
    row("RRHRRH", "abcabc", 2, 3),
    row("HHRHHR", "aabccb", 1, 1),
    row("HHRHHR", "abcbac", 0, 1),
    row("HHRHHR", "abcabc", 1, 2),
];

/// Symmetric Circulant and Hankel.
///
/// The third `HHHSHS` word is `abacbc`, the only remaining pairing of that
/// monomial; it is often quoted as `abcabc`, which would pair an `H` with an `S`.
pub const SYMMETRIC_CIRCULANT_HANKEL: [ReferenceRow; 14] = [
    row("SSHH", "aabb", 1, 1),
    row("SHSH", "abab", 2, 3),
    row("SSSSHH", "aabbcc", 1, 1),
    row("SSSSHH", "abbacc", 1, 1),
    row("SSSSHH", "ababcc", 1, 1),
    row("HHHHSS", "aabbcc", 1, 1),
    row("HHHHSS", "abbacc", 1, 1),
    row("HHHHSS", "ababcc", 0, 1),
    row("HHHSHS", "aabcbc", 1, 2),
    row("HHHSHS", "abbcac", 1, 2),
    row("HHHSHS", "abacbc", 0, 1),
    row("HHSHHS", "aabccb", 1, 1),
    row("HHSHHS", "abcbac", 1, 2),
    row("HHSHHS", "abcabc", 0, 1),
];

/// All reference rows in a fixed order.
pub fn reference_rows() -> Vec<ReferenceRow> {
    TOEPLITZ_HANKEL
        .iter()
        .chain(&REVERSE_CIRCULANT_HANKEL)
        .chain(&SYMMETRIC_CIRCULANT_HANKEL)
        .copied()
        .collect()
}
