use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Real univariate polynomial, coefficients highest degree first.
///
/// The zero polynomial has no coefficients. Every other value has a nonzero
/// leading coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    /// Builds a polynomial, dropping leading zeros.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let first = coeffs
            .iter()
            .position(|&c| c != 0.0)
            .unwrap_or(coeffs.len());
        let mut coeffs = coeffs;
        coeffs.drain(..first);
        Self { coeffs }
    }

    /// Like [`Poly::new`] but rejects NaN and infinite coefficients.
    pub fn try_new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self::new(coeffs))
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `t + r`
    pub fn linear(r: f64) -> Self {
        Self::new(vec![1.0, r])
    }

    /// `(t + r)^k`
    pub fn shifted_power(r: f64, k: usize) -> Self {
        let base = Self::linear(r);
        (0..k).fold(Self::constant(1.0), |acc, _| &acc * &base)
    }

    /// Builds from ascending-order coefficients (constant term first).
    pub fn from_ascending(mut coeffs: Vec<f64>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero when out of range.
    pub fn coeff(&self, k: usize) -> f64 {
        match self.degree() {
            Some(d) if k <= d => self.coeffs[d - k],
            _ => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Value and derivative at `x` in one Horner pass.
    pub fn eval_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for &c in &self.coeffs {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return Self::zero(),
        };
        Self::new(
            self.coeffs[..d]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (d - i) as f64)
                .collect(),
        )
    }

    /// Substitutes `t -> k t`.
    pub fn compose_scale(&self, k: f64) -> Self {
        let d = self.degree().unwrap_or(0);
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * k.powi((d - i) as i32))
                .collect(),
        )
    }

    /// Drops leading coefficients whose magnitude is at most `rel` times the
    /// largest coefficient.
    pub fn trim_relative(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs();
        let first = self
            .coeffs
            .iter()
            .position(|c| c.abs() > cut)
            .unwrap_or(self.coeffs.len());
        Self {
            coeffs: self.coeffs[first..].to_vec(),
        }
    }

    /// Scales so the largest coefficient magnitude is one.
    pub fn unit_norm(&self) -> Self {
        let m = self.max_abs();
        if m == 0.0 {
            Self::zero()
        } else {
            self.scale(1.0 / m)
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let nd = match self.degree() {
            Some(nd) if nd >= dd => nd,
            _ => return (Poly::zero(), self.clone()),
        };
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; nd - dd + 1];
        for i in 0..=nd - dd {
            let q = rem[i] / lead;
            quot[i] = q;
            rem[i] = 0.0;
            for (j, &dc) in divisor.coeffs.iter().enumerate().skip(1) {
                rem[i + j] -= q * dc;
            }
        }
        let rem = rem.split_off(nd - dd + 1);
        (Poly::new(quot), Poly::new(rem))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn add_aligned(a: &[f64], b: &[f64], sign: f64) -> Vec<f64> {
    let n = a.len().max(b.len());
    let mut out = vec![0.0; n];
    for (i, &c) in a.iter().enumerate() {
        out[n - a.len() + i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[n - b.len() + i] += sign * c;
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::new(add_aligned(&self.coeffs, &rhs.coeffs, 1.0))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::new(add_aligned(&self.coeffs, &rhs.coeffs, -1.0))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}
