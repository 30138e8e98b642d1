use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 50;

/// Uniform-bin histogram of a sample, normalized to a density.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    /// `bins + 1` ascending edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Points falling inside the edges.
    pub total: u64,
    /// Points outside an explicitly given range.
    pub outside: u64,
    pub density: Vec<f64>,
}

impl Histogram {
    /// Bins `values` on `range`, or on `[min, max]` padded by 1% on each side.
    pub fn new(values: &[f64], bins: usize, range: Option<(f64, f64)>) -> Result<Histogram> {
        if bins == 0 {
            return Err(Error::InvalidInput("a histogram needs at least one bin".into()));
        }
        let (lo, hi) = match range {
            Some((lo, hi)) if lo < hi && lo.is_finite() && hi.is_finite() => (lo, hi),
            Some((lo, hi)) => return Err(Error::InvalidInput(format!("bad histogram range [{lo}, {hi}]"))),
            None => {
                if values.is_empty() {
                    return Err(Error::InvalidInput("cannot pick a range for an empty sample".into()));
                }
                let min = values.iter().copied().fold(f64::INFINITY, f64::min);
                let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let pad = if max > min { 0.01 * (max - min) } else { 0.5 };
                (min - pad, max + pad)
            }
        };
        let width = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut h = Histogram {
            edges,
            counts: vec![0; bins],
            total: 0,
            outside: 0,
            density: vec![0.0; bins],
        };
        h.add(values);
        Ok(h)
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    fn add(&mut self, values: &[f64]) {
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        let bins = self.bins();
        for &v in values {
            if !(lo..=hi).contains(&v) {
                self.outside += 1;
                continue;
            }
            let b = (((v - lo) / (hi - lo)) * bins as f64) as usize;
            self.counts[b.min(bins - 1)] += 1;
            self.total += 1;
        }
        self.renormalize();
    }

    fn renormalize(&mut self) {
        let total = self.total.max(1) as f64;
        for (i, d) in self.density.iter_mut().enumerate() {
            let width = self.edges[i + 1] - self.edges[i];
            *d = self.counts[i] as f64 / (total * width);
        }
    }

    /// Adds the counts of `other`, which must have the same edges.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.edges != other.edges {
            return Err(Error::InvalidInput(
                "histograms with different bins cannot be merged".into(),
            ));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        self.outside += other.outside;
        self.renormalize();
        Ok(())
    }

    /// Fraction of binned mass outside `[lo, hi]`, counting partial bins as inside.
    pub fn mass_outside(&self, lo: f64, hi: f64) -> f64 {
        let out: u64 = self
            .counts
            .iter()
            .enumerate()
            .filter(|(i, _)| self.edges[i + 1] < lo || self.edges[*i] > hi)
            .map(|(_, c)| c)
            .sum();
        out as f64 / self.total.max(1) as f64
    }
}

/// Density histogram of a spectrum.
pub fn esd(eigenvalues: &[f64], bins: usize, range: Option<(f64, f64)>) -> Result<Histogram> {
    Histogram::new(eigenvalues, bins, range)
}
