use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cases::ConstraintSystem;
use crate::seed;

/// How a volume was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMethod {
    MonteCarlo,
    ExactCount,
}

impl VolumeMethod {
    pub fn name(self) -> &'static str {
        match self {
            VolumeMethod::MonteCarlo => "monte_carlo",
            VolumeMethod::ExactCount => "exact_count",
        }
    }
}

/// A limit volume with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub stderr: f64,
    pub method: VolumeMethod,
    /// Larger of the two sizes used by the exact-count extrapolation.
    pub n_used: Option<usize>,
    /// Total Monte Carlo draws.
    pub samples: Option<u64>,
}

impl VolumeEstimate {
    pub fn exact_zero(method: VolumeMethod) -> Self {
        VolumeEstimate {
            value: 0.0,
            stderr: 0.0,
            method,
            n_used: None,
            samples: None,
        }
    }
}

const BLOCK: u64 = 1 << 16;

/// Monte Carlo volume of one constraint system.
///
/// Systems that are not full-dimensional have volume exactly 0. Otherwise the
/// generating coordinates are drawn uniformly on `[0, 1)` and the estimate is the
/// fraction of draws putting every dependent vertex in `[0, 1)`.
///
/// The draws are split into fixed-size blocks, each with its own substream
/// of `seed`, so the result does not depend on the thread count.
pub fn case_volume_mc(cs: &ConstraintSystem, samples: u64, seed: u64) -> VolumeEstimate {
    if !cs.is_full_dimensional() {
        return VolumeEstimate::exact_zero(VolumeMethod::MonteCarlo);
    }
    let samples = samples.max(1);
    let forms: Vec<(Vec<f64>, f64)> = cs.dependent().map(|(_, f)| f.to_f64()).collect();
    // The closure vertex equals v_0 and needs no check.
    let forms = &forms[..forms.len().saturating_sub(1)];
    let dim = cs.dim();

    let blocks = samples.div_ceil(BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let draws = BLOCK.min(samples - b * BLOCK);
            let mut rng = seed::substream(seed, &[b]);
            let mut point = vec![0.0; dim];
            let mut hits = 0u64;
            for _ in 0..draws {
                point.iter_mut().for_each(|x| *x = rng.random::<f64>());
                let inside = forms.iter().all(|(c, b)| {
                    let v = c.iter().zip(&point).map(|(a, x)| a * x).sum::<f64>() + b;
                    (0.0..1.0).contains(&v)
                });
                hits += inside as u64;
            }
            hits
        })
        .sum();

    let p = hits as f64 / samples as f64;
    VolumeEstimate {
        value: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        method: VolumeMethod::MonteCarlo,
        n_used: None,
        samples: Some(samples),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ColoredWord;
    use crate::limits::cases::{build_cases, resolve_affine};

    #[test]
    fn full_cube_is_one() {
        let w = ColoredWord::parse("aa", "HH").unwrap();
        let cs = resolve_affine(&w, &build_cases(&w)[0]);
        let v = case_volume_mc(&cs, 1000, 3);
        assert_eq!(v.value, 1.0);
        assert_eq!(v.stderr, 0.0);
    }

    #[test]
    fn non_identity_closure_is_zero() {
        let w = ColoredWord::parse("abab", "THTH").unwrap();
        let cs = resolve_affine(&w, &build_cases(&w)[1]);
        assert!(!cs.closure_is_identity());
        let v = case_volume_mc(&cs, 1000, 3);
        assert_eq!((v.value, v.stderr), (0.0, 0.0));
    }

    #[test]
    fn alternating_toeplitz_hankel_is_two_thirds() {
        let w = ColoredWord::parse("abab", "THTH").unwrap();
        let total: f64 = build_cases(&w)
            .iter()
            .map(|c| case_volume_mc(&resolve_affine(&w, c), 400_000, 11))
            .map(|v| v.value)
            .sum();
        assert!((total - 2.0 / 3.0).abs() < 0.005, "{total}");
    }

    #[test]
    fn deterministic_in_seed() {
        let w = ColoredWord::parse("abab", "THTH").unwrap();
        let cs = resolve_affine(&w, &build_cases(&w)[0]);
        let a = case_volume_mc(&cs, 200_000, 5);
        let b = case_volume_mc(&cs, 200_000, 5);
        assert_eq!(a, b);
    }
}
