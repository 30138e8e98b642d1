//! The five link functions.
//!
//! A patterned matrix has entries `x(L(i, j))` where `L` is the link function
//! of its kind. Vertices are 0-based, `0..n`.
//!
//! | kind | `L(i, j)` | Property B bound |
//! |------|-----------|------------------|
//! | Wigner `W` | `(min(i,j), max(i,j))` | 1 |
//! | Toeplitz `T` | `\|i - j\|` | 2 |
//! | Hankel `H` | `i + j` | 1 |
//! | Reverse Circulant `R` | `(i + j) mod n` | 1 |
//! | Symmetric Circulant `S` | `min(d, n - d)`, `d = \|i - j\|` | 2 |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the five patterned ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkKind {
    Wigner,
    Toeplitz,
    Hankel,
    ReverseCirculant,
    SymmetricCirculant,
}

impl LinkKind {
    pub const ALL: [LinkKind; 5] = [
        LinkKind::Wigner,
        LinkKind::Toeplitz,
        LinkKind::Hankel,
        LinkKind::ReverseCirculant,
        LinkKind::SymmetricCirculant,
    ];

    /// The single-character code used in monomials, CLI flags and JSON.
    pub fn code(self) -> char {
        match self {
            LinkKind::Wigner => 'W',
            LinkKind::Toeplitz => 'T',
            LinkKind::Hankel => 'H',
            LinkKind::ReverseCirculant => 'R',
            LinkKind::SymmetricCirculant => 'S',
        }
    }

    pub fn from_code(c: char) -> Result<Self> {
        match c {
            'W' => Ok(LinkKind::Wigner),
            'T' => Ok(LinkKind::Toeplitz),
            'H' => Ok(LinkKind::Hankel),
            'R' => Ok(LinkKind::ReverseCirculant),
            'S' => Ok(LinkKind::SymmetricCirculant),
            other => Err(Error::UnknownKind(other)),
        }
    }

    /// Property B bound: the most solutions `x` of `L(p, x) = t`, over all `n, p, t`.
    pub fn delta(self) -> usize {
        match self {
            LinkKind::Toeplitz | LinkKind::SymmetricCirculant => 2,
            LinkKind::Wigner | LinkKind::Hankel | LinkKind::ReverseCirculant => 1,
        }
    }

    /// Number of distinct L-values at size `n`, i.e. independent inputs per matrix.
    pub fn value_count(self, n: usize) -> usize {
        match self {
            LinkKind::Wigner => n * (n + 1) / 2,
            LinkKind::Toeplitz | LinkKind::ReverseCirculant => n,
            LinkKind::Hankel => 2 * n - 1,
            LinkKind::SymmetricCirculant => n / 2 + 1,
        }
    }

    /// Dense slot of an L-value in `0..value_count(n)`.
    pub(crate) fn value_slot(self, n: usize, value: LValue) -> usize {
        match value {
            // row-major packing of the upper triangle
            LValue::Wigner(a, b) => a * n - a * a.saturating_sub(1) / 2 + (b - a),
            LValue::Toeplitz(d) | LValue::Hankel(d) | LValue::ReverseCirculant(d) | LValue::SymmetricCirculant(d) => {
                debug_assert_eq!(value.kind(), self);
                d
            }
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

impl FromStr for LinkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => LinkKind::from_code(c),
            (Some(c), Some(_)) => Err(Error::UnknownKind(c)),
            (None, _) => Err(Error::InvalidInput("empty matrix kind".into())),
        }
    }
}

impl Serialize for LinkKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_char(self.code())
    }
}

impl<'de> Deserialize<'de> for LinkKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An L-value, tagged with the kind that produced it.
///
/// Values of different kinds never compare equal, even when numerically equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LValue {
    /// `(min, max)`; always `a <= b`.
    Wigner(usize, usize),
    Toeplitz(usize),
    Hankel(usize),
    ReverseCirculant(usize),
    SymmetricCirculant(usize),
}

impl LValue {
    pub fn kind(self) -> LinkKind {
        match self {
            LValue::Wigner(..) => LinkKind::Wigner,
            LValue::Toeplitz(_) => LinkKind::Toeplitz,
            LValue::Hankel(_) => LinkKind::Hankel,
            LValue::ReverseCirculant(_) => LinkKind::ReverseCirculant,
            LValue::SymmetricCirculant(_) => LinkKind::SymmetricCirculant,
        }
    }
}

impl fmt::Display for LValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LValue::Wigner(a, b) => write!(f, "({a},{b})"),
            LValue::Toeplitz(v) | LValue::Hankel(v) | LValue::ReverseCirculant(v) | LValue::SymmetricCirculant(v) => {
                write!(f, "{v}")
            }
        }
    }
}

fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v >= n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

/// Evaluates `L(i, j)` for a matrix of size `n`.
pub fn link_eval(kind: LinkKind, n: usize, i: usize, j: usize) -> Result<LValue> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    check_vertex(n, i)?;
    check_vertex(n, j)?;
    Ok(eval_unchecked(kind, n, i, j))
}

#[inline]
pub(crate) fn eval_unchecked(kind: LinkKind, n: usize, i: usize, j: usize) -> LValue {
    match kind {
        LinkKind::Wigner => LValue::Wigner(i.min(j), i.max(j)),
        LinkKind::Toeplitz => LValue::Toeplitz(i.abs_diff(j)),
        LinkKind::Hankel => LValue::Hankel(i + j),
        LinkKind::ReverseCirculant => LValue::ReverseCirculant((i + j) % n),
        LinkKind::SymmetricCirculant => {
            let d = i.abs_diff(j);
            LValue::SymmetricCirculant(d.min(n - d))
        }
    }
}

/// Solutions of `L(prev, x) = target`, at most two of them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Solutions {
    buf: [usize; 2],
    len: usize,
}

impl Solutions {
    fn push(&mut self, x: usize) {
        if self.len == 1 && self.buf[0] == x {
            return;
        }
        self.buf[self.len] = x;
        self.len += 1;
    }

    pub(crate) fn as_slice(&self) -> &[usize] {
        &self.buf[..self.len]
    }
}

#[inline]
pub(crate) fn solve_unchecked(kind: LinkKind, n: usize, prev: usize, target: LValue) -> Solutions {
    let mut out = Solutions::default();
    match (kind, target) {
        (LinkKind::Wigner, LValue::Wigner(a, b)) => {
            if prev == a {
                if b < n {
                    out.push(b);
                }
            } else if prev == b && a < n {
                out.push(a);
            }
        }
        (LinkKind::Toeplitz, LValue::Toeplitz(d)) => {
            if d <= prev {
                out.push(prev - d);
            }
            if prev + d < n {
                out.push(prev + d);
            }
        }
        (LinkKind::Hankel, LValue::Hankel(s)) => {
            if s >= prev && s - prev < n {
                out.push(s - prev);
            }
        }
        (LinkKind::ReverseCirculant, LValue::ReverseCirculant(r)) => {
            if r < n {
                out.push((r + n - prev) % n);
            }
        }
        (LinkKind::SymmetricCirculant, LValue::SymmetricCirculant(t)) if 2 * t <= n => {
            // d = |prev - x| must be t or n - t
            let mut candidates = [usize::MAX; 4];
            let mut m = 0;
            for d in [t, n - t] {
                if d <= prev {
                    candidates[m] = prev - d;
                    m += 1;
                }
                if prev + d < n {
                    candidates[m] = prev + d;
                    m += 1;
                }
            }
            let found = &mut candidates[..m];
            found.sort_unstable();
            let mut last = usize::MAX;
            for &x in found.iter() {
                if x != last {
                    out.push(x);
                    last = x;
                }
            }
        }
        _ => {}
    }
    out
}

/// All `x` in `0..n` with `L(prev, x) = target`, ascending.
///
/// A target of a different kind has no solutions. The result never has more
/// than [`LinkKind::delta`] elements.
pub fn link_solve(kind: LinkKind, n: usize, prev: usize, target: LValue) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    check_vertex(n, prev)?;
    let mut v = solve_unchecked(kind, n, prev, target).as_slice().to_vec();
    v.sort_unstable();
    Ok(v)
}

/// Finite-`n` Property P count: the largest number of rows `k` on which two
/// distinct columns `i != j` share an L-value.
pub fn property_p_count(kind: LinkKind, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let mut best = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let matches = (0..n)
                .filter(|&k| eval_unchecked(kind, n, k, i) == eval_unchecked(kind, n, k, j))
                .count();
            best = best.max(matches);
        }
    }
    Ok(best)
}
