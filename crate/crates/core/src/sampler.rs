//! Random realizations of the five patterned ensembles and Monte Carlo trace moments.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::link::{eval_unchecked, LinkKind};
use crate::seed;

/// Law of the i.i.d. inputs. All have mean 0 and variance 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InputDistribution {
    #[default]
    Gaussian,
    Rademacher,
    /// Uniform on `[-√3, √3]`.
    UniformSym,
}

impl InputDistribution {
    pub const ALL: [InputDistribution; 3] = [
        InputDistribution::Gaussian,
        InputDistribution::Rademacher,
        InputDistribution::UniformSym,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InputDistribution::Gaussian => "gaussian",
            InputDistribution::Rademacher => "rademacher",
            InputDistribution::UniformSym => "uniform",
        }
    }

    pub fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            InputDistribution::Gaussian => StandardNormal.sample(rng),
            InputDistribution::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            InputDistribution::UniformSym => 3f64.sqrt() * (2.0 * rng.random::<f64>() - 1.0),
        }
    }
}

impl fmt::Display for InputDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InputDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" | "normal" => Ok(InputDistribution::Gaussian),
            "rademacher" | "sign" => Ok(InputDistribution::Rademacher),
            "uniform" | "uniform_sym" | "uniformsym" => Ok(InputDistribution::UniformSym),
            _ => Err(Error::InvalidInput(format!(
                "unknown input distribution '{s}' (expected gaussian, rademacher or uniform)"
            ))),
        }
    }
}

/// One unscaled patterned matrix: entry `(i, j)` is the input drawn for `L(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSample {
    pub kind: LinkKind,
    pub index: u32,
    pub n: usize,
    pub entries: Array2<f64>,
}

impl MatrixSample {
    /// The entries divided by `√n`.
    pub fn scaled(&self) -> Array2<f64> {
        &self.entries / (self.n as f64).sqrt()
    }
}

/// Draws one input per distinct L-value and fills the matrix by lookup.
pub fn sample_matrix<R: Rng + ?Sized>(
    kind: LinkKind,
    index: u32,
    n: usize,
    dist: InputDistribution,
    rng: &mut R,
) -> Result<MatrixSample> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    let inputs: Vec<f64> = (0..kind.value_count(n)).map(|_| dist.draw(rng)).collect();
    let entries = Array2::from_shape_fn((n, n), |(i, j)| {
        inputs[kind.value_slot(n, eval_unchecked(kind, n, i, j))]
    });
    Ok(MatrixSample {
        kind,
        index,
        n,
        entries,
    })
}

fn symbol_stream(master: u64, replicate: usize, symbol: Letter) -> ChaCha8Rng {
    seed::substream(
        master,
        &[replicate as u64, symbol.kind.code() as u64, symbol.index as u64],
    )
}

/// The matrices of one replicate, one per distinct symbol of `q`.
///
/// Each symbol has its own substream of `master`, so a replicate is the same
/// whatever other symbols are requested alongside it.
pub fn sample_replicate(
    symbols: impl IntoIterator<Item = Letter>,
    n: usize,
    dist: InputDistribution,
    master: u64,
    replicate: usize,
) -> Result<HashMap<Letter, MatrixSample>> {
    let mut out = HashMap::new();
    for s in symbols {
        if let std::collections::hash_map::Entry::Vacant(slot) = out.entry(s) {
            slot.insert(sample_matrix(
                s.kind,
                s.index,
                n,
                dist,
                &mut symbol_stream(master, replicate, s),
            )?);
        }
    }
    Ok(out)
}

/// Mean and spread of a replicated statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub mean: f64,
    /// Sample standard deviation over replicates (0 for a single replicate).
    pub sd: f64,
    pub reps: usize,
    pub n: usize,
    pub seed: u64,
}

impl MomentEstimate {
    pub fn from_values(values: &[f64], n: usize, seed: u64) -> MomentEstimate {
        let reps = values.len();
        let mean = values.iter().sum::<f64>() / reps.max(1) as f64;
        let var = if reps > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (reps - 1) as f64
        } else {
            0.0
        };
        MomentEstimate {
            mean,
            sd: var.sqrt(),
            reps,
            n,
            seed,
        }
    }

    pub fn stderr(&self) -> f64 {
        self.sd / (self.reps as f64).sqrt()
    }
}

fn product(factors: &[&Array2<f64>]) -> Array2<f64> {
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = prod.dot(*f);
    }
    prod
}

/// `Tr(A_1 A_2 ... A_k)` by dense products.
///
/// The factors are split into two halves `P` and `Q` and the trace is taken
/// as `Σ_ij P_ij Q_ji`. When both halves are the same matrices in the same
/// order, `Q` is not recomputed.
pub fn trace_of_product(factors: &[&Array2<f64>]) -> f64 {
    match factors.len() {
        0 => panic!("empty product"),
        1 => factors[0].diag().sum(),
        len => {
            let (left, right) = factors.split_at(len.div_ceil(2));
            let p = product(left);
            let same = left.len() == right.len() && left.iter().zip(right).all(|(a, b)| std::ptr::eq(*a, *b));
            let q = if same { None } else { Some(product(right)) };
            let q = q.as_ref().unwrap_or(&p);
            p.indexed_iter().map(|((i, j), v)| v * q[[j, i]]).sum()
        }
    }
}

/// `Tr(q(A)) / n^{1 + k/2}` for one replicate of matrices.
pub fn normalized_trace(q: &Monomial, mats: &HashMap<Letter, MatrixSample>, n: usize) -> f64 {
    let factors: Vec<&Array2<f64>> = q.letters().iter().map(|l| &mats[l].entries).collect();
    trace_of_product(&factors) / (n as f64).powf(1.0 + q.len() as f64 / 2.0)
}

/// Per-replicate values of the normalized trace `Tr(q(A)) / n^{1+k/2}`.
///
/// Repeated symbols of `q` refer to the same matrix within a replicate.
pub fn trace_moment_values(
    q: &Monomial,
    n: usize,
    dist: InputDistribution,
    reps: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if reps == 0 {
        return Err(Error::InvalidInput("at least one replicate is needed".into()));
    }
    (0..reps)
        .into_par_iter()
        .map(|r| {
            let mats = sample_replicate(q.letters().iter().copied(), n, dist, seed, r)?;
            Ok(normalized_trace(q, &mats, n))
        })
        .collect()
}

/// Monte Carlo estimate of the expected normalized trace of `q` at size `n`.
pub fn empirical_trace_moment(
    q: &Monomial,
    n: usize,
    dist: InputDistribution,
    reps: usize,
    seed: u64,
) -> Result<MomentEstimate> {
    let values = trace_moment_values(q, n, dist, reps, seed)?;
    Ok(MomentEstimate::from_values(&values, n, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(17)
    }

    #[test]
    fn toeplitz_is_constant_on_diagonals() {
        let m = sample_matrix(LinkKind::Toeplitz, 1, 4, InputDistribution::Gaussian, &mut rng()).unwrap();
        assert_eq!(m.entries[[0, 2]], m.entries[[1, 3]]);
        assert_ne!(m.entries[[0, 2]], m.entries[[0, 1]]);
    }

    #[test]
    fn reverse_circulant_follows_sums_mod_n() {
        let m = sample_matrix(
            LinkKind::ReverseCirculant,
            1,
            4,
            InputDistribution::Gaussian,
            &mut rng(),
        )
        .unwrap();
        assert_eq!(m.entries[[0, 1]], m.entries[[3, 2]]);
    }

    #[test]
    fn wigner_has_one_input_per_upper_entry() {
        let m = sample_matrix(LinkKind::Wigner, 1, 3, InputDistribution::Gaussian, &mut rng()).unwrap();
        let mut distinct: Vec<f64> = m.entries.iter().copied().collect();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn zero_size_is_rejected() {
        assert!(sample_matrix(LinkKind::Hankel, 1, 0, InputDistribution::Gaussian, &mut rng()).is_err());
    }

    #[test]
    fn distribution_names_parse() {
        for d in InputDistribution::ALL {
            assert_eq!(d.name().parse::<InputDistribution>().unwrap(), d);
        }
        assert!("cauchy".parse::<InputDistribution>().is_err());
    }

    #[test]
    fn trace_shortcut_matches_full_product() {
        let mut r = rng();
        let a = sample_matrix(LinkKind::Hankel, 1, 5, InputDistribution::Gaussian, &mut r)
            .unwrap()
            .entries;
        let b = sample_matrix(LinkKind::Toeplitz, 1, 5, InputDistribution::Gaussian, &mut r)
            .unwrap()
            .entries;
        let full = a.dot(&b).dot(&a).diag().sum();
        assert!((trace_of_product(&[&a, &b, &a]) - full).abs() < 1e-9 * full.abs().max(1.0));
        assert!((trace_of_product(&[&a]) - a.diag().sum()).abs() < 1e-12);
        let square = a.dot(&b).dot(&a).dot(&b).diag().sum();
        assert!((trace_of_product(&[&a, &b, &a, &b]) - square).abs() < 1e-9 * square.abs().max(1.0));
    }

    #[test]
    fn same_symbol_same_matrix() {
        let q = Monomial::parse("T1 H1 T1 H2").unwrap();
        let mats = sample_replicate(q.letters().iter().copied(), 6, InputDistribution::Rademacher, 3, 0).unwrap();
        assert_eq!(mats.len(), 3);
        let alone = sample_replicate(
            [Letter::new(LinkKind::Hankel, 2)],
            6,
            InputDistribution::Rademacher,
            3,
            0,
        )
        .unwrap();
        assert_eq!(
            alone[&Letter::new(LinkKind::Hankel, 2)],
            mats[&Letter::new(LinkKind::Hankel, 2)]
        );
    }
}
