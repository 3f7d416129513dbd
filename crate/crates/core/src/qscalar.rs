//! Quantum numbers at q = exp(iπ/r).

use crate::error::{Error, Result};
use crate::weight_modules::Color;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Scalars are plain complex doubles.
pub type QScalar = Complex64;

/// Absolute threshold below which a denominator counts as zero.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParams {
    pub r: u32,
    pub q: Complex64,
}

impl QParams {
    pub fn new(r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidOrder(r));
        }
        Ok(QParams {
            r,
            q: Complex64::from_polar(1.0, PI / r as f64),
        })
    }

    pub fn rf(&self) -> f64 {
        self.r as f64
    }

    /// q^x = exp(iπx/r).
    pub fn q_pow(&self, x: Complex64) -> QScalar {
        (Complex64::i() * PI * x / self.rf()).exp()
    }

    /// {x} = q^x - q^-x.
    pub fn qnum(&self, x: Complex64) -> QScalar {
        self.q_pow(x) - self.q_pow(-x)
    }

    pub fn qnum_int(&self, n: i64) -> QScalar {
        self.qnum(Complex64::new(n as f64, 0.0))
    }

    /// {n}! = {n}{n-1}...{1}.
    pub fn qfact(&self, n: u32) -> QScalar {
        (1..=n as i64).map(|k| self.qnum_int(k)).product()
    }

    /// ({top}{top-1}...{top-k+1}) / {k}!.
    pub fn qbinom(&self, top: Complex64, k: u32) -> Result<QScalar> {
        let den = self.qfact(k);
        if den.norm() < ZERO_TOL {
            return Err(Error::DivisionByZero(format!(
                "{{{k}}}! vanishes at r = {}",
                self.r
            )));
        }
        let num: Complex64 = (0..k).map(|j| self.qnum(top - j as f64)).product();
        Ok(num / den)
    }

    /// d(λ) = (-1)^(r-1) r {λ} / {rλ}.
    pub fn modified_dim(&self, lambda: Color) -> Result<QScalar> {
        let den = self.qnum(lambda.0 * self.rf());
        if den.norm() < ZERO_TOL {
            return Err(Error::DivisionByZero(format!(
                "{{r λ}} vanishes at λ = {}",
                lambda.0
            )));
        }
        let sign = if self.r % 2 == 1 { 1.0 } else { -1.0 };
        Ok(sign * self.rf() * self.qnum(lambda.0) / den)
    }
}
