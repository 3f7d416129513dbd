//! Small dense complex matrix helpers.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron_all(factors: &[&CMatrix]) -> CMatrix {
    factors
        .iter()
        .fold(CMatrix::identity(1, 1), |acc, f| acc.kronecker(*f))
}

pub fn inverse(m: &CMatrix, context: &str) -> Result<CMatrix> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular(context.to_string()))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise deviation between two equally shaped matrices.
pub fn max_dev(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b))
}

/// Smallest relative residual max|m - c n| / max|m| over scalars c,
/// with c fixed by the largest entry of n. Infinite on shape mismatch.
pub fn projective_dev(m: &CMatrix, n: &CMatrix) -> f64 {
    if m.shape() != n.shape() {
        return f64::INFINITY;
    }
    let (k, nk) = match n
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
    {
        Some(x) => x,
        None => return 0.0,
    };
    let scale = max_abs(m);
    if nk.norm() == 0.0 || scale == 0.0 {
        return if nk.norm() == 0.0 && scale == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    let c = m[k] / nk;
    max_abs(&(m - n * c)) / scale
}

/// Projective distance from the identity.
pub fn projective_identity_dev(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    projective_dev(m, &identity(m.nrows()))
}

pub fn matrix_power(m: &CMatrix, k: usize) -> CMatrix {
    (0..k).fold(identity(m.nrows()), |acc, _| acc * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_dev_scalar_multiple() {
        let m = CMatrix::from_fn(3, 3, |i, j| Complex64::new(i as f64 + 1.0, j as f64 - 0.5));
        let n = &m * Complex64::new(0.0, 2.5);
        assert!(projective_dev(&m, &n) < 1e-15);
        let mut p = n.clone();
        p[(1, 2)] += Complex64::new(1e-3, 0.0);
        assert!(projective_dev(&m, &p) > 1e-5);
    }

    #[test]
    fn kron_order_leftmost_most_significant() {
        let a =
            CMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0)));
        let b = identity(2);
        let k = kron_all(&[&a, &b]);
        assert_eq!(k[(0, 2)], Complex64::new(2.0, 0.0));
        assert_eq!(k[(1, 3)], Complex64::new(2.0, 0.0));
    }
}
