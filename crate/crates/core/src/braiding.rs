//! R-matrix, braiding c = τ∘R and ADO braid representations.

use crate::error::{Error, Result};
use crate::linalg::{identity, inverse, kron_all, matrix_power, CMatrix};
use crate::qscalar::QParams;
use crate::weight_modules::{tensor_labels, typical_module, Color, ModuleMap};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    /// 1-based generator index.
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Config("a braid needs at least one strand".into()));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(Error::IndexOutOfRange {
                    index: l.index,
                    max: strands - 1,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }
}

#[derive(Debug, Clone)]
pub struct ColoredRep {
    pub matrix: ModuleMap,
    /// Output strand k carries the color of input strand permutation[k] (0-based).
    pub permutation: Vec<usize>,
}

/// R = q^{H⊗H/2} Σ_n {1}^{2n}/{n}! q^{n(n-1)/2} E^n ⊗ F^n on V_λ ⊗ V_μ.
pub fn r_matrix(p: &QParams, lambda: Color, mu: Color) -> Result<ModuleMap> {
    let v = typical_module(p, lambda)?;
    let w = typical_module(p, mu)?;
    let r = p.r as usize;
    let cartan = CMatrix::from_fn(r * r, r * r, |i, j| {
        if i == j {
            p.q_pow(v.weight(i / r) * w.weight(i % r) / 2.0)
        } else {
            Complex64::ZERO
        }
    });
    let one = p.qnum_int(1);
    let mut sum = CMatrix::zeros(r * r, r * r);
    for n in 0..r {
        let coeff = one.powi(2 * n as i32) / p.qfact(n as u32)
            * p.q_pow(Complex64::new(
                (n * (n.saturating_sub(1))) as f64 / 2.0,
                0.0,
            ));
        sum += matrix_power(&v.e, n).kronecker(&matrix_power(&w.f, n)) * coeff;
    }
    let labels = tensor_labels(r, &[lambda, mu]);
    Ok(ModuleMap::endo(labels, cartan * sum))
}

/// Flip τ: V ⊗ W → W ⊗ V for two r-dimensional factors.
pub fn flip(r: usize) -> CMatrix {
    let mut t = CMatrix::zeros(r * r, r * r);
    for i in 0..r {
        for j in 0..r {
            t[(j * r + i, i * r + j)] = Complex64::new(1.0, 0.0);
        }
    }
    t
}

/// c_{V_λ, V_μ}: V_λ ⊗ V_μ → V_μ ⊗ V_λ.
pub fn braiding_c(p: &QParams, lambda: Color, mu: Color) -> Result<ModuleMap> {
    let rm = r_matrix(p, lambda, mu)?;
    let r = p.r as usize;
    Ok(ModuleMap::new(
        rm.domain,
        tensor_labels(r, &[mu, lambda]),
        flip(r) * rm.matrix,
    ))
}

/// Matrix of one letter acting on the given colors, with the colors after it.
fn letter_matrix(p: &QParams, colors: &[Color], letter: Letter) -> Result<(CMatrix, Vec<Color>)> {
    let r = p.r as usize;
    let i = letter.index - 1;
    let mut after = colors.to_vec();
    after.swap(i, i + 1);
    let local = if letter.inverse {
        inverse(
            &braiding_c(p, colors[i + 1], colors[i])?.matrix,
            "inverse braiding",
        )?
    } else {
        braiding_c(p, colors[i], colors[i + 1])?.matrix
    };
    let left = identity(r.pow(i as u32));
    let right = identity(r.pow((colors.len() - i - 2) as u32));
    Ok((kron_all(&[&left, &local, &right]), after))
}

/// Leftmost letter acts first.
pub fn ado_rep(p: &QParams, colors: &[Color], word: &BraidWord) -> Result<ColoredRep> {
    if colors.len() != word.strands {
        return Err(Error::Config(format!(
            "{} colors given for {} strands",
            colors.len(),
            word.strands
        )));
    }
    for c in colors {
        crate::weight_modules::check_typical(p, *c)?;
    }
    let r = p.r as usize;
    let mut current = colors.to_vec();
    let mut perm: Vec<usize> = (0..colors.len()).collect();
    let mut total = identity(r.pow(colors.len() as u32));
    for &letter in &word.letters {
        if letter.index == 0 || letter.index >= word.strands {
            return Err(Error::IndexOutOfRange {
                index: letter.index,
                max: word.strands - 1,
            });
        }
        let (m, after) = letter_matrix(p, &current, letter)?;
        total = m * total;
        current = after;
        perm.swap(letter.index - 1, letter.index);
    }
    Ok(ColoredRep {
        matrix: ModuleMap::new(tensor_labels(r, colors), tensor_labels(r, &current), total),
        permutation: perm,
    })
}
