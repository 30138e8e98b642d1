//! Limits of normalized circuit counts: word volumes `p(w)` and monomial limits `α(q)`.
//!
//! Two independent routes are offered. [`LimitMethod::MonteCarlo`] resolves
//! every case of a word into an affine system and estimates the volume of the
//! region where all vertices stay in `[0, 1)`. [`LimitMethod::ExactCountExtrapolate`]
//! counts circuits exactly at two sizes and extrapolates `count / n^{1+k}`.

mod affine;
mod cases;
mod count;
mod volume;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

pub use affine::AffineForm;
pub use cases::{build_cases, resolve_affine, CaseLabel, ConstraintSystem, MatchCase, WignerConstraint};
pub use count::{count_circuits_exact, count_circuits_reversed_wigner, enumeration_work, DEFAULT_BUDGET};
pub use volume::{case_volume_mc, VolumeEstimate, VolumeMethod};

use crate::algebra::{enumerate_pair_matched_words, ColoredWord, Monomial};
use crate::error::{Error, Result};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    MonteCarlo,
    ExactCountExtrapolate,
}

impl LimitMethod {
    pub fn name(self) -> &'static str {
        match self {
            LimitMethod::MonteCarlo => "mc",
            LimitMethod::ExactCountExtrapolate => "exact",
        }
    }
}

impl fmt::Display for LimitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LimitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mc" | "monte_carlo" | "montecarlo" => Ok(LimitMethod::MonteCarlo),
            "exact" | "exact_count" | "extrapolate" => Ok(LimitMethod::ExactCountExtrapolate),
            _ => Err(Error::InvalidInput(format!(
                "unknown limit method '{s}' (expected mc or exact)"
            ))),
        }
    }
}

/// Tuning shared by both methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitParams {
    /// Monte Carlo draws per distinct constraint system.
    pub samples: u64,
    pub seed: u64,
    /// Work budget for exact counting.
    pub budget: u64,
    /// Sizes `(n, 2n)` for the extrapolation; `None` picks by word length.
    pub sizes: Option<(usize, usize)>,
}

impl Default for LimitParams {
    fn default() -> Self {
        LimitParams {
            samples: 1_000_000,
            seed: 0,
            budget: DEFAULT_BUDGET,
            sizes: None,
        }
    }
}

/// Extrapolation sizes for a word of length `2k`.
pub fn default_sizes(k: usize) -> (usize, usize) {
    match k {
        0..=2 => (40, 80),
        3 => (24, 48),
        _ => (16, 32),
    }
}

/// The full-dimensional constraint systems of `w`, duplicates merged, in
/// case order. Only these carry volume.
pub fn distinct_systems(w: &ColoredWord) -> Vec<ConstraintSystem> {
    let mut seen = HashSet::new();
    build_cases(w)
        .iter()
        .map(|c| resolve_affine(w, c))
        .filter(|cs| cs.is_full_dimensional() && seen.insert(cs.canonical_key()))
        .collect()
}

fn word_seed_part(w: &ColoredWord) -> u64 {
    seed::fnv1a(&format!("{} {}", w.text(), w.monomial().color_string()))
}

fn p_monte_carlo(w: &ColoredWord, params: &LimitParams) -> VolumeEstimate {
    let systems = distinct_systems(w);
    let tag = word_seed_part(w);
    let parts: Vec<VolumeEstimate> = systems
        .par_iter()
        .enumerate()
        .map(|(i, cs)| case_volume_mc(cs, params.samples, seed::derive_seed(params.seed, &[tag, i as u64])))
        .collect();
    VolumeEstimate {
        value: parts.iter().fold(0.0, |acc, v| acc + v.value),
        stderr: parts.iter().fold(0.0, |acc, v| acc + v.stderr * v.stderr).sqrt(),
        method: VolumeMethod::MonteCarlo,
        n_used: None,
        samples: Some(params.samples * systems.len() as u64),
    }
}

fn volume_cap(w: &ColoredWord) -> f64 {
    w.match_pairs().iter().map(|p| w.color(p.i).delta() as f64).product()
}

fn p_extrapolated(w: &ColoredWord, params: &LimitParams) -> Result<VolumeEstimate> {
    let k = w.len() / 2;
    let (n1, n2) = params.sizes.unwrap_or_else(|| default_sizes(k));
    let f = |n: usize| -> Result<f64> {
        let c = count_circuits_exact(w, n, params.budget)?;
        Ok(c as f64 / (n as f64).powi(k as i32 + 1))
    };
    let (f1, f2) = match (f(n1), f(n2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(Error::BudgetExceeded { .. }), _) | (_, Err(Error::BudgetExceeded { .. })) if k >= 4 => {
            return Ok(p_monte_carlo(w, params));
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let value = if n2 == 2 * n1 { 2.0 * f2 - f1 } else { f2 };
    Ok(VolumeEstimate {
        value: value.clamp(0.0, volume_cap(w)),
        stderr: (f2 - f1).abs(),
        method: VolumeMethod::ExactCount,
        n_used: Some(n2),
        samples: None,
    })
}

/// The limit `p(w) = lim |Π(w)| / n^{1+k}` of a pair-matched word, where
/// `Π(w)` is the set of circuits whose L-values agree on every match.
///
/// Indices are ignored: the volume of an indexed word equals that of the
/// word with its indices dropped.
pub fn p_limit(w: &ColoredWord, method: LimitMethod, params: &LimitParams) -> Result<VolumeEstimate> {
    if !w.is_pair_matched() {
        return Err(Error::InvalidWord(format!("{w} is not pair-matched")));
    }
    let w = w.drop_indices();
    match method {
        LimitMethod::MonteCarlo => Ok(p_monte_carlo(&w, params)),
        LimitMethod::ExactCountExtrapolate => p_extrapolated(&w, params),
    }
}

/// `α(q)` with the uncertainty accumulated over its words.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaEstimate {
    pub value: f64,
    pub stderr: f64,
    /// Number of indexed pair-matched words summed.
    pub words: usize,
}

/// `α(q) = Σ p(ψ(w))` over the indexed pair-matched words `w` of `q`.
pub fn alpha(q: &Monomial, method: LimitMethod, params: &LimitParams) -> Result<AlphaEstimate> {
    LimitSolver::new(method, *params).alpha(q)
}

/// The universal bound on `α(q)`.
///
/// Zero when the length is odd or some symbol occurs an odd number of times;
/// otherwise `k! Δ^{k/2} / ((k/2)! 2^{k/2})` for length `k`, with `Δ` the
/// largest Property B constant among the colors present.
pub fn alpha_bound(q: &Monomial) -> f64 {
    let k = q.len();
    if k % 2 == 1 || q.symbol_counts().values().any(|c| c % 2 == 1) {
        return 0.0;
    }
    let half = k / 2;
    let pairings: f64 = (1..=k).map(|i| i as f64).product::<f64>()
        / ((1..=half).map(|i| i as f64).product::<f64>() * 2f64.powi(half as i32));
    pairings * (q.delta() as f64).powi(half as i32)
}

/// Memoizing front end for repeated `p` and `α` evaluations with one
/// method and parameter set.
pub struct LimitSolver {
    method: LimitMethod,
    params: LimitParams,
    cache: Mutex<HashMap<ColoredWord, VolumeEstimate>>,
}

impl LimitSolver {
    pub fn new(method: LimitMethod, params: LimitParams) -> Self {
        LimitSolver {
            method,
            params,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn method(&self) -> LimitMethod {
        self.method
    }

    pub fn params(&self) -> &LimitParams {
        &self.params
    }

    pub fn p_limit(&self, w: &ColoredWord) -> Result<VolumeEstimate> {
        let key = w.drop_indices();
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = p_limit(&key, self.method, &self.params)?;
        self.cache.lock().unwrap().insert(key, v);
        Ok(v)
    }

    pub fn alpha(&self, q: &Monomial) -> Result<AlphaEstimate> {
        let words = enumerate_pair_matched_words(q, true);
        let mut value = 0.0;
        let mut var = 0.0;
        for w in &words {
            let p = self.p_limit(w)?;
            value += p.value;
            var += p.stderr * p.stderr;
        }
        Ok(AlphaEstimate {
            value,
            stderr: var.sqrt(),
            words: words.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> LimitParams {
        LimitParams {
            samples: 200_000,
            seed: 9,
            ..LimitParams::default()
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(alpha_bound(&Monomial::parse("THTH").unwrap()), 12.0);
        assert_eq!(alpha_bound(&Monomial::parse("WHWH").unwrap()), 3.0);
        assert_eq!(alpha_bound(&Monomial::parse("THT").unwrap()), 0.0);
        assert_eq!(alpha_bound(&Monomial::parse("T1 T2 T1 T1").unwrap()), 0.0);
    }

    #[test]
    fn odd_monomials_vanish_exactly() {
        let a = alpha(&Monomial::parse("TTT").unwrap(), LimitMethod::MonteCarlo, &quick()).unwrap();
        assert_eq!((a.value, a.words), (0.0, 0));
    }

    #[test]
    fn both_methods_agree_on_alternating_toeplitz_hankel() {
        let w = ColoredWord::parse("abab", "THTH").unwrap();
        let mc = p_limit(&w, LimitMethod::MonteCarlo, &quick()).unwrap();
        let ex = p_limit(&w, LimitMethod::ExactCountExtrapolate, &quick()).unwrap();
        assert!((mc.value - 2.0 / 3.0).abs() < 0.01);
        assert!((ex.value - 2.0 / 3.0).abs() < 0.02, "{ex:?}");
        assert_eq!(ex.n_used, Some(80));
    }

    #[test]
    fn method_names_round_trip() {
        for m in [LimitMethod::MonteCarlo, LimitMethod::ExactCountExtrapolate] {
            assert_eq!(m.name().parse::<LimitMethod>().unwrap(), m);
        }
        assert!("simplex".parse::<LimitMethod>().is_err());
    }

    #[test]
    fn solver_caches_dropped_words() {
        let solver = LimitSolver::new(LimitMethod::MonteCarlo, quick());
        let a = solver.alpha(&Monomial::parse("T1 T2 T1 T2").unwrap()).unwrap();
        let b = solver.alpha(&Monomial::parse("T1 T1 T1 T1").unwrap()).unwrap();
        assert_eq!(a.words, 1);
        assert_eq!(b.words, 3);
        assert_eq!(solver.cache.lock().unwrap().len(), 3);
    }
}
