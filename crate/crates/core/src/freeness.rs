//! Free-probability predictions for mixed moments of Wigner matrices with
//! other patterned ensembles, and simulation diagnostics around them.
//!
//! For `q = W A_1 W A_2 ... W A_m`, where the `A_r` are (possibly empty)
//! products of non-Wigner symbols, asymptotic freeness says
//!
//! `α(q) = Σ_σ Π_{cycles c of σγ} α(A_{c_1} A_{c_2} ...)`,
//!
//! the sum running over non-crossing pairings `σ` of the `m` Wigner positions
//! that only pair equal Wigner symbols, with `γ = (1 2 ... m)` and `σγ`
//! meaning "apply `γ`, then `σ`".

use std::fmt;

use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::limits::LimitSolver;
use crate::link::LinkKind;
use crate::sampler::{empirical_trace_moment, sample_matrix, trace_moment_values, InputDistribution};
use crate::seed;

/// Largest `|α(q) - prediction|` accepted as agreement.
pub const FREENESS_TOL: f64 = 0.03;

/// A perfect matching of `{0, .., m-1}`, pairs sorted, each `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PairPartition {
    m: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    pub fn new(m: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; m];
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
            for x in [p.0, p.1] {
                if x >= m || seen[x] {
                    return Err(Error::InvalidInput(format!(
                        "pair {p:?} is not a fresh pair of points below {m}"
                    )));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput(format!(
                "pairing of {m} points leaves some unmatched"
            )));
        }
        pairs.sort();
        Ok(PairPartition { m, pairs })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The partner of every point.
    pub fn involution(&self) -> Vec<usize> {
        let mut inv = vec![0; self.m];
        for &(a, b) in &self.pairs {
            inv[a] = b;
            inv[b] = a;
        }
        inv
    }

    pub fn is_noncrossing(&self) -> bool {
        self.pairs
            .iter()
            .all(|&(a, b)| self.pairs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }
}

impl fmt::Display for PairPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.pairs {
            write!(f, "({} {})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// All non-crossing pairings of `m` points; empty for odd `m`.
pub fn enumerate_nc2(m: usize) -> Vec<PairPartition> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for partner in (lo + 1..hi).step_by(2) {
            for inner in rec(lo + 1, partner) {
                for outer in rec(partner + 1, hi) {
                    let mut p = vec![(lo, partner)];
                    p.extend(&inner);
                    p.extend(&outer);
                    out.push(p);
                }
            }
        }
        out
    }
    if m % 2 == 1 {
        return Vec::new();
    }
    rec(0, m)
        .into_iter()
        .map(|p| PairPartition::new(m, p).expect("recursion yields perfect matchings"))
        .collect()
}

/// Keeps the pairings that only join points of equal color.
pub fn filter_colored<C: PartialEq>(partitions: Vec<PairPartition>, colors: &[C]) -> Vec<PairPartition> {
    partitions
        .into_iter()
        .filter(|p| p.size() == colors.len() && p.pairs().iter().all(|&(a, b)| colors[a] == colors[b]))
        .collect()
}

/// A permutation of `{0, .., m-1}` as disjoint cycles, each starting at its
/// smallest point, ordered by that point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclePermutation {
    cycles: Vec<Vec<usize>>,
}

impl CyclePermutation {
    /// From the images `map[i]` of every point.
    pub fn from_map(map: &[usize]) -> Self {
        let mut seen = vec![false; map.len()];
        let mut cycles = Vec::new();
        for start in 0..map.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = map[x];
            }
            cycles.push(cycle);
        }
        CyclePermutation { cycles }
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn count(&self) -> usize {
        self.cycles.len()
    }
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let inner: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", inner.join(" "))?;
        }
        Ok(())
    }
}

/// Cycles of `σ ∘ γ` for the long cycle `γ: r ↦ r + 1 mod m`.
pub fn sigma_gamma_cycles(sigma: &PairPartition) -> CyclePermutation {
    let m = sigma.size();
    let inv = sigma.involution();
    let map: Vec<usize> = (0..m).map(|r| inv[(r + 1) % m]).collect();
    CyclePermutation::from_map(&map)
}

/// `q` split as `S A_1 S A_2 ... S A_m` around the letters of one role kind
/// (Wigner for freeness proper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingMonomial {
    pub role: LinkKind,
    /// The `m` role letters, in order.
    pub separators: Vec<Letter>,
    /// `blocks[r]` follows `separators[r]`.
    pub blocks: Vec<Vec<Letter>>,
    /// Left rotation applied to the source monomial so it starts with a role letter.
    pub rotation: usize,
}

impl AlternatingMonomial {
    /// Decomposition around the Wigner letters.
    pub fn from_monomial(q: &Monomial) -> Result<Self> {
        AlternatingMonomial::decompose(q, LinkKind::Wigner)
    }

    /// Decomposition around the letters of kind `role`. Fails when `q` has none.
    pub fn decompose(q: &Monomial, role: LinkKind) -> Result<Self> {
        let Some(first) = q.letters().iter().position(|l| l.kind == role) else {
            return Err(Error::InvalidInput(format!("{q} has no {role} letters")));
        };
        let rotated = q.rotate(first);
        let mut separators = Vec::new();
        let mut blocks: Vec<Vec<Letter>> = Vec::new();
        for &l in rotated.letters() {
            if l.kind == role {
                separators.push(l);
                blocks.push(Vec::new());
            } else {
                blocks.last_mut().expect("starts with a role letter").push(l);
            }
        }
        Ok(AlternatingMonomial {
            role,
            separators,
            blocks,
            rotation: first,
        })
    }

    pub fn m(&self) -> usize {
        self.separators.len()
    }

    /// The rotated monomial this decomposition describes.
    pub fn monomial(&self) -> Monomial {
        let letters = self
            .separators
            .iter()
            .zip(&self.blocks)
            .flat_map(|(s, b)| std::iter::once(*s).chain(b.iter().copied()))
            .collect();
        Monomial::new(letters).expect("non-empty")
    }
}

/// The freeness prediction for `q`: a sum over color-respecting non-crossing
/// pairings of products of `marginal` over the cycles of `σγ`.
///
/// `marginal` receives the concatenated blocks of a cycle; an empty product
/// contributes 1 without a call.
pub fn free_moment_prediction<F>(q: &AlternatingMonomial, mut marginal: F) -> Result<f64>
where
    F: FnMut(&Monomial) -> Result<f64>,
{
    let pairings = filter_colored(enumerate_nc2(q.m()), &q.separators);
    let mut total = 0.0;
    for sigma in &pairings {
        let mut term = 1.0;
        for cycle in sigma_gamma_cycles(sigma).cycles() {
            let letters: Vec<Letter> = cycle.iter().flat_map(|&r| q.blocks[r].iter().copied()).collect();
            if letters.is_empty() {
                continue;
            }
            term *= marginal(&Monomial::new(letters)?)?;
            if term == 0.0 {
                break;
            }
        }
        total += term;
    }
    Ok(total)
}

/// Moments of the semicircle law: Catalan numbers at even orders, 0 at odd ones.
pub fn semicircle_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let h = k / 2;
    // C_h = binom(2h, h) / (h + 1)
    let mut c = 1.0;
    for i in 0..h {
        c = c * (2 * h - i) as f64 / (i + 1) as f64;
    }
    c / (h + 1) as f64
}

/// Limit, freeness prediction and simulation for one mixed monomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreenessReport {
    pub q: String,
    /// The monomial after rotation to start with a Wigner letter.
    pub alternating: String,
    pub alpha: f64,
    pub alpha_stderr: f64,
    pub free_prediction: f64,
    pub empirical: Option<f64>,
    pub empirical_sd: Option<f64>,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    /// `|alpha - free_prediction| <= FREENESS_TOL`.
    pub free_within_tol: bool,
    pub deviation: f64,
}

/// Compares the limit `α(q)` with the freeness prediction built from
/// limits of the non-Wigner blocks, and, when `reps > 0`, with a simulation
/// of the normalized trace at size `n`.
pub fn freeness_report(
    q: &Monomial,
    n: usize,
    dist: InputDistribution,
    reps: usize,
    seed: u64,
    solver: &LimitSolver,
) -> Result<FreenessReport> {
    if !q.letters().iter().any(|l| l.kind == LinkKind::Wigner) {
        return Err(Error::InvalidInput(format!(
            "{q} has no Wigner letter; the freeness prediction needs one"
        )));
    }
    role_report(q, LinkKind::Wigner, n, dist, reps, seed, solver)
}

/// [`freeness_report`] with another kind in the role of the Wigner letters.
///
/// Nothing predicts freeness here; the deviation measures how far the pair
/// is from behaving freely.
pub fn role_report(
    q: &Monomial,
    role: LinkKind,
    n: usize,
    dist: InputDistribution,
    reps: usize,
    seed: u64,
    solver: &LimitSolver,
) -> Result<FreenessReport> {
    let alt = AlternatingMonomial::decompose(q, role)?;
    let alpha = solver.alpha(q)?;
    let prediction = free_moment_prediction(&alt, |m| Ok(solver.alpha(m)?.value))?;
    let (empirical, empirical_sd) = if reps > 0 {
        let e = empirical_trace_moment(q, n, dist, reps, seed)?;
        (Some(e.mean), Some(e.sd))
    } else {
        (None, None)
    };
    let deviation = (alpha.value - prediction).abs();
    Ok(FreenessReport {
        q: q.to_string(),
        alternating: alt.monomial().to_string(),
        alpha: alpha.value,
        alpha_stderr: alpha.stderr,
        free_prediction: prediction,
        empirical,
        empirical_sd,
        n,
        reps,
        seed,
        free_within_tol: deviation <= FREENESS_TOL,
        deviation,
    })
}

/// `[(1/n) Tr(M^k) for k in 1..=kmax]`.
pub fn normalized_power_traces(m: &Array2<f64>, kmax: usize) -> Vec<f64> {
    let n = m.nrows() as f64;
    let half = kmax.div_ceil(2);
    let mut powers = vec![m.clone()];
    for _ in 1..half {
        let next = powers.last().unwrap().dot(m);
        powers.push(next);
    }
    (1..=kmax)
        .map(|k| {
            let a = k.div_ceil(2);
            let b = k - a;
            let tr = if b == 0 {
                powers[a - 1].diag().sum()
            } else {
                let (p, q) = (&powers[a - 1], &powers[b - 1]);
                p.indexed_iter().map(|((i, j), v)| v * q[[j, i]]).sum()
            };
            tr / n
        })
        .collect()
}

/// One size of a [`trace_factorization_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationRow {
    pub n: usize,
    /// Mean over replicates of `Π_i tr(X^{k_i})`.
    pub joint: f64,
    /// `Π_i` of the replicate means of `tr(X^{k_i})`.
    pub product: f64,
    /// `joint - product`.
    pub gap: f64,
    /// `|gap|` relative to the previous size.
    pub ratio_to_previous: Option<f64>,
}

/// How far `E[Π tr((X/√n)^{k_i})]` is from `Π E[tr((X/√n)^{k_i})]`, for each `n`.
///
/// `tr` is the normalized trace `(1/n) Tr`.
pub fn trace_factorization_check(
    kind: LinkKind,
    powers: &[usize],
    sizes: &[usize],
    dist: InputDistribution,
    reps: usize,
    seed: u64,
) -> Result<Vec<FactorizationRow>> {
    if powers.len() < 2 {
        return Err(Error::InvalidInput("need at least two powers".into()));
    }
    if reps < 2 {
        return Err(Error::InvalidInput("need at least two replicates".into()));
    }
    let kmax = *powers.iter().max().unwrap();
    let mut rows: Vec<FactorizationRow> = Vec::new();
    for &n in sizes {
        let traces: Vec<Vec<f64>> = (0..reps)
            .into_par_iter()
            .map(|r| {
                let mut rng = seed::substream(seed, &[n as u64, r as u64, kind.code() as u64]);
                let x = sample_matrix(kind, 1, n, dist, &mut rng)?.scaled();
                let t = normalized_power_traces(&x, kmax);
                Ok(powers.iter().map(|&k| t[k - 1]).collect())
            })
            .collect::<Result<_>>()?;
        let joint = traces.iter().map(|t| t.iter().product::<f64>()).sum::<f64>() / reps as f64;
        let product: f64 = (0..powers.len())
            .map(|i| traces.iter().map(|t| t[i]).sum::<f64>() / reps as f64)
            .product();
        let gap = joint - product;
        let ratio_to_previous = rows.last().map(|prev| gap.abs() / prev.gap.abs());
        rows.push(FactorizationRow {
            n,
            joint,
            product,
            gap,
            ratio_to_previous,
        });
    }
    Ok(rows)
}

/// One size of a [`concentration_check`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub n: usize,
    pub mean: f64,
    /// Sample fourth central moment of the normalized trace.
    pub fourth_central_moment: f64,
    /// Previous fourth moment divided by this one.
    pub decrease_factor: Option<f64>,
}

/// Fourth central moments of the normalized trace of `q` across sizes, with
/// the least-squares slope of `log m4` against `log n`.
pub fn concentration_check(
    q: &Monomial,
    sizes: &[usize],
    dist: InputDistribution,
    reps: usize,
    seed: u64,
) -> Result<(Vec<ConcentrationRow>, f64)> {
    if reps < 50 {
        return Err(Error::InvalidInput(format!("need at least 50 replicates, got {reps}")));
    }
    let mut rows: Vec<ConcentrationRow> = Vec::new();
    for &n in sizes {
        let values = trace_moment_values(q, n, dist, reps, seed::derive_seed(seed, &[n as u64]))?;
        let mean = values.iter().sum::<f64>() / reps as f64;
        let m4 = values.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / reps as f64;
        let decrease_factor = rows.last().map(|prev| prev.fourth_central_moment / m4);
        rows.push(ConcentrationRow {
            n,
            mean,
            fourth_central_moment: m4,
            decrease_factor,
        });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), r.fourth_central_moment.ln()))
        .collect();
    let k = pts.len() as f64;
    let (mx, my) = (
        pts.iter().map(|p| p.0).sum::<f64>() / k,
        pts.iter().map(|p| p.1).sum::<f64>() / k,
    );
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { f64::NAN };
    Ok((rows, slope))
}
