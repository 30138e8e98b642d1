use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;

/// An exact affine form `c_0 v_0 + c_1 v_1 + ... + b` over the generating coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineForm {
    coeffs: Vec<Rational64>,
    constant: Rational64,
}

impl AffineForm {
    pub fn zero(dim: usize) -> Self {
        AffineForm {
            coeffs: vec![Rational64::from_integer(0); dim],
            constant: Rational64::from_integer(0),
        }
    }

    /// The coordinate `v_S[index]`.
    pub fn coordinate(dim: usize, index: usize) -> Self {
        let mut f = AffineForm::zero(dim);
        f.coeffs[index] = Rational64::from_integer(1);
        f
    }

    pub fn constant(dim: usize, value: i64) -> Self {
        let mut f = AffineForm::zero(dim);
        f.constant = Rational64::from_integer(value);
        f
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Rational64 {
        self.constant
    }

    pub fn scale(&self, by: i64) -> Self {
        let r = Rational64::from_integer(by);
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            constant: self.constant * r,
        }
    }

    pub fn plus_constant(&self, value: i64) -> Self {
        AffineForm {
            coeffs: self.coeffs.clone(),
            constant: self.constant + Rational64::from_integer(value),
        }
    }

    /// Coefficients and constant as floats, for sampling.
    pub fn to_f64(&self) -> (Vec<f64>, f64) {
        let conv = |r: &Rational64| *r.numer() as f64 / *r.denom() as f64;
        (self.coeffs.iter().map(conv).collect(), conv(&self.constant))
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        let (c, b) = self.to_f64();
        c.iter().zip(point).map(|(a, x)| a * x).sum::<f64>() + b
    }
}

impl Add for &AffineForm {
    type Output = AffineForm;

    fn add(self, rhs: &AffineForm) -> AffineForm {
        debug_assert_eq!(self.dim(), rhs.dim());
        AffineForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            constant: self.constant + rhs.constant,
        }
    }
}

impl Sub for &AffineForm {
    type Output = AffineForm;

    fn sub(self, rhs: &AffineForm) -> AffineForm {
        debug_assert_eq!(self.dim(), rhs.dim());
        AffineForm {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
            constant: self.constant - rhs.constant,
        }
    }
}

impl Neg for &AffineForm {
    type Output = AffineForm;

    fn neg(self) -> AffineForm {
        self.scale(-1)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c.numer() == 0 {
                continue;
            }
            let sign = if *c.numer() < 0 {
                "-"
            } else if wrote {
                "+"
            } else {
                ""
            };
            let mag = if *c.numer() < 0 { -*c } else { *c };
            if mag == Rational64::from_integer(1) {
                write!(f, "{sign}u{i}")?;
            } else {
                write!(f, "{sign}{mag}*u{i}")?;
            }
            wrote = true;
        }
        if *self.constant.numer() != 0 || !wrote {
            if wrote && *self.constant.numer() > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}
