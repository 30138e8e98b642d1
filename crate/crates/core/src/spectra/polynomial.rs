use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use crate::algebra::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::sampler::MatrixSample;

use super::eigen::asymmetry;

/// A real linear combination of monomials in the scaled matrices `A / √n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPolynomial {
    terms: Vec<(f64, Monomial)>,
}

impl MatrixPolynomial {
    pub fn new(terms: Vec<(f64, Monomial)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("polynomial has no terms".into()));
        }
        Ok(MatrixPolynomial { terms })
    }

    /// Parses sums such as `T + H`, `TH + HT` or `0.5 W1 - 2 T1 T1`.
    ///
    /// Terms are separated by `+` or `-`; a term may start with a numeric
    /// coefficient followed by a monomial.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut sign = 1.0;
        let mut current = String::new();
        let flush = |sign: f64, body: &str, terms: &mut Vec<(f64, Monomial)>| -> Result<()> {
            let body = body.trim();
            if body.is_empty() {
                return Err(Error::InvalidInput(format!("empty term in polynomial '{text}'")));
            }
            let split = body
                .find(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E')
                .unwrap_or(body.len());
            let (coef, mono) = body.split_at(split);
            let coef = coef.trim();
            let c = if coef.is_empty() {
                1.0
            } else {
                coef.trim_end_matches('*')
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient '{coef}' in '{text}'")))?
            };
            terms.push((sign * c, Monomial::parse(mono)?));
            Ok(())
        };
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() && !current.trim_end().ends_with(['e', 'E']) {
                flush(sign, &current, &mut terms)?;
                current.clear();
                sign = if ch == '-' { -1.0 } else { 1.0 };
            } else if (ch == '+' || ch == '-') && current.trim().is_empty() {
                sign *= if ch == '-' { -1.0 } else { 1.0 };
            } else {
                current.push(ch);
            }
        }
        flush(sign, &current, &mut terms)?;
        MatrixPolynomial::new(terms)
    }

    pub fn terms(&self) -> &[(f64, Monomial)] {
        &self.terms
    }

    /// Every distinct symbol appearing in some term.
    pub fn symbols(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self
            .terms
            .iter()
            .flat_map(|(_, m)| m.letters().iter().copied())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let sep = match (i, *c < 0.0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if c.abs() == 1.0 {
                write!(f, "{sep}{m}")?;
            } else {
                write!(f, "{sep}{} {m}", c.abs())?;
            }
        }
        Ok(())
    }
}

impl FromStr for MatrixPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixPolynomial::parse(s)
    }
}

/// `Σ c · (A_1/√n)(A_2/√n)···` over the terms, checked to be symmetric.
pub fn eval_polynomial(p: &MatrixPolynomial, samples: &HashMap<Letter, MatrixSample>, n: usize) -> Result<Array2<f64>> {
    let mut total = Array2::<f64>::zeros((n, n));
    for (c, mono) in p.terms() {
        let mut prod: Option<Array2<f64>> = None;
        for l in mono.letters() {
            let m = samples
                .get(l)
                .ok_or_else(|| Error::InvalidInput(format!("no sample for symbol {l}")))?;
            if m.n != n {
                return Err(Error::InvalidInput(format!(
                    "sample for {l} has size {}, expected {n}",
                    m.n
                )));
            }
            prod = Some(match prod {
                None => m.entries.clone(),
                Some(p) => p.dot(&m.entries),
            });
        }
        let scale = c / (n as f64).powf(mono.len() as f64 / 2.0);
        total.scaled_add(scale, &prod.expect("monomials are non-empty"));
    }
    let a = asymmetry(&total);
    if a > 1e-10 {
        return Err(Error::NotSymmetric { asymmetry: a });
    }
    Ok(total)
}
