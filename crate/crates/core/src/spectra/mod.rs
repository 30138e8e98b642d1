//! Spectra of polynomials in patterned matrices: eigenvalues, empirical
//! spectral distributions and their moments.

mod eigen;
mod histogram;
mod polynomial;

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

pub use eigen::{
    asymmetry, eigenvalues_jacobi_capped, eigenvalues_symmetric, eigenvalues_tridiagonal, DEFAULT_CAP, DEFAULT_TOL,
    MAX_SWEEPS,
};
pub use histogram::{esd, Histogram, DEFAULT_BINS};
pub use polynomial::{eval_polynomial, MatrixPolynomial};

use crate::algebra::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::limits::LimitSolver;
use crate::link::LinkKind;
use crate::sampler::{sample_replicate, InputDistribution};

/// Odd moments at most this large in magnitude count as vanishing.
pub const ODD_MOMENT_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenSolver {
    Jacobi,
    /// Householder tridiagonalization followed by implicit QL.
    #[default]
    Tridiagonal,
}

impl EigenSolver {
    pub fn eigenvalues(self, m: &Array2<f64>, cap: usize) -> Result<Vec<f64>> {
        match self {
            EigenSolver::Jacobi => eigenvalues_jacobi_capped(m, DEFAULT_TOL, cap),
            EigenSolver::Tridiagonal => eigenvalues_tridiagonal(m, cap),
        }
    }
}

impl FromStr for EigenSolver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jacobi" => Ok(EigenSolver::Jacobi),
            "tridiagonal" | "ql" => Ok(EigenSolver::Tridiagonal),
            _ => Err(Error::InvalidInput(format!(
                "unknown eigensolver '{s}' (expected jacobi or tridiagonal)"
            ))),
        }
    }
}

impl fmt::Display for EigenSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EigenSolver::Jacobi => "jacobi",
            EigenSolver::Tridiagonal => "tridiagonal",
        })
    }
}

/// Sorted spectrum with its first moments `m_k = (1/n) Σ λ_i^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    /// `moments[k - 1] = m_k`.
    pub moments: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

impl SpectrumSummary {
    pub fn new(mut eigenvalues: Vec<f64>, kmax: usize) -> SpectrumSummary {
        eigenvalues.sort_by(f64::total_cmp);
        let moments = spectral_moments(&eigenvalues, kmax);
        SpectrumSummary {
            min: eigenvalues.first().copied().unwrap_or(f64::NAN),
            max: eigenvalues.last().copied().unwrap_or(f64::NAN),
            eigenvalues,
            moments,
        }
    }
}

/// `[(1/n) Σ λ^k for k in 1..=kmax]`.
pub fn spectral_moments(eigenvalues: &[f64], kmax: usize) -> Vec<f64> {
    let n = eigenvalues.len().max(1) as f64;
    (1..=kmax)
        .map(|k| eigenvalues.iter().map(|l| l.powi(k as i32)).sum::<f64>() / n)
        .collect()
}

/// Settings for a spectral report.
#[derive(Debug, Clone, PartialEq)]
pub struct LsdConfig {
    pub n: usize,
    pub reps: usize,
    pub dist: InputDistribution,
    pub seed: u64,
    /// Highest moment order reported.
    pub kmax: usize,
    pub bins: usize,
    pub range: Option<(f64, f64)>,
    pub solver: EigenSolver,
    pub cap: usize,
    /// Histogram only the first replicate instead of pooling all of them.
    pub single_replicate: bool,
}

impl Default for LsdConfig {
    fn default() -> Self {
        LsdConfig {
            n: 500,
            reps: 1,
            dist: InputDistribution::Gaussian,
            seed: 0,
            kmax: 6,
            bins: DEFAULT_BINS,
            range: None,
            solver: EigenSolver::default(),
            cap: DEFAULT_CAP,
            single_replicate: false,
        }
    }
}

/// Moments, histogram and shape diagnostics of an averaged empirical spectral distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsdReport {
    pub polynomial: String,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub dist: InputDistribution,
    pub solver: EigenSolver,
    /// `moments[k - 1]`: `m_k` averaged over replicates.
    pub moments: Vec<f64>,
    /// Standard deviation of `m_k` across replicates.
    pub moment_sd: Vec<f64>,
    pub min: f64,
    pub max: f64,
    /// Every odd `|m_k|` is at most [`ODD_MOMENT_TOL`].
    pub odd_moments_vanish: bool,
    /// `m_{2k}^{1/(2k)}` is non-decreasing in `k`.
    pub even_growth_nondecreasing: bool,
    /// Limits of the moments computed from word volumes, when requested.
    pub limit_moments: Option<Vec<f64>>,
    pub histogram: Histogram,
}

/// `true` when `m_{2k}^{1/(2k)}` does not decrease over the available even orders.
pub fn even_growth_nondecreasing(moments: &[f64]) -> bool {
    let roots: Vec<f64> = moments
        .iter()
        .enumerate()
        .skip(1)
        .step_by(2)
        .map(|(i, m)| m.max(0.0).powf(1.0 / (i + 1) as f64))
        .collect();
    roots.windows(2).all(|w| w[1] >= w[0])
}

/// Spectral report for a symmetric matrix polynomial, averaged over replicates.
pub fn lsd_report(p: &MatrixPolynomial, cfg: &LsdConfig) -> Result<LsdReport> {
    if cfg.reps == 0 {
        return Err(Error::InvalidInput("at least one replicate is needed".into()));
    }
    let symbols = p.symbols();
    let spectra: Vec<Vec<f64>> = (0..cfg.reps)
        .into_par_iter()
        .map(|r| {
            let mats = sample_replicate(symbols.iter().copied(), cfg.n, cfg.dist, cfg.seed, r)?;
            let m = eval_polynomial(p, &mats, cfg.n)?;
            cfg.solver.eigenvalues(&m, cfg.cap)
        })
        .collect::<Result<_>>()?;

    let per_rep: Vec<Vec<f64>> = spectra.iter().map(|s| spectral_moments(s, cfg.kmax)).collect();
    let reps = cfg.reps as f64;
    let moments: Vec<f64> = (0..cfg.kmax)
        .map(|k| per_rep.iter().map(|m| m[k]).sum::<f64>() / reps)
        .collect();
    let moment_sd: Vec<f64> = (0..cfg.kmax)
        .map(|k| {
            if cfg.reps < 2 {
                return 0.0;
            }
            let v = per_rep.iter().map(|m| (m[k] - moments[k]).powi(2)).sum::<f64>() / (reps - 1.0);
            v.sqrt()
        })
        .collect();

    let pooled: Vec<f64> = if cfg.single_replicate {
        spectra[0].clone()
    } else {
        spectra.concat()
    };
    let histogram = esd(&pooled, cfg.bins, cfg.range)?;
    let min = pooled.iter().copied().fold(f64::INFINITY, f64::min);
    let max = pooled.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    Ok(LsdReport {
        polynomial: p.to_string(),
        n: cfg.n,
        reps: cfg.reps,
        seed: cfg.seed,
        dist: cfg.dist,
        solver: cfg.solver,
        odd_moments_vanish: moments.iter().step_by(2).all(|m| m.abs() <= ODD_MOMENT_TOL),
        even_growth_nondecreasing: even_growth_nondecreasing(&moments),
        moments,
        moment_sd,
        min,
        max,
        limit_moments: None,
        histogram,
    })
}

/// The two symbols of `A + B`: independent copies when the kinds coincide.
pub fn sum_symbols(a: LinkKind, b: LinkKind) -> (Letter, Letter) {
    let second = if a == b { 2 } else { 1 };
    (Letter::new(a, 1), Letter::new(b, second))
}

/// Limits of `m_k` for `(A + B)/√n`, `k = 1..=kmax`: `Σ α(q)` over all
/// `2^k` monomials `q` in the two symbols.
pub fn sum_limit_moments(a: LinkKind, b: LinkKind, kmax: usize, solver: &LimitSolver) -> Result<Vec<f64>> {
    let (x, y) = sum_symbols(a, b);
    (1..=kmax)
        .map(|k| {
            let mut total = 0.0;
            for mask in 0u32..(1 << k) {
                let letters = (0..k).map(|i| if mask >> i & 1 == 1 { y } else { x }).collect();
                total += solver.alpha(&Monomial::new(letters)?)?.value;
            }
            Ok(total)
        })
        .collect()
}

/// [`lsd_report`] for `(A + B)/√n` with `A` and `B` independent of kinds `a`, `b`.
///
/// With a `solver`, the limit moments up to order `limit_order` are added.
pub fn sum_lsd_report(
    a: LinkKind,
    b: LinkKind,
    cfg: &LsdConfig,
    solver: Option<(&LimitSolver, usize)>,
) -> Result<LsdReport> {
    let (x, y) = sum_symbols(a, b);
    let p = MatrixPolynomial::new(vec![(1.0, Monomial::new(vec![x])?), (1.0, Monomial::new(vec![y])?)])?;
    let mut report = lsd_report(&p, cfg)?;
    if let Some((s, order)) = solver {
        report.limit_moments = Some(sum_limit_moments(a, b, order, s)?);
    }
    Ok(report)
}
