//! Fusion window, 6j-symbols and the H/I graph change of basis.

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::qscalar::{QParams, QScalar};
use crate::weight_modules::{BasisLabel, Color, ModuleMap};
use num_complex::Complex64;

pub const INTEGRALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionWindow {
    pub r: u32,
    /// r-1, r-3, ..., 1-r
    pub values: Vec<i64>,
}

impl FusionWindow {
    pub fn contains(&self, z: Complex64) -> bool {
        self.values
            .iter()
            .any(|&h| (z - h as f64).norm() < INTEGRALITY_TOL)
    }
}

pub fn fusion_window(p: &QParams) -> FusionWindow {
    let r = p.r as i64;
    FusionWindow {
        r: p.r,
        values: (0..r).map(|k| r - 1 - 2 * k).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HGraph {
    pub colors: [Color; 4],
    pub internal: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IGraph {
    pub colors: [Color; 4],
    pub internal: Complex64,
}

impl HGraph {
    pub fn is_admissible(&self, p: &QParams) -> bool {
        let w = fusion_window(p);
        let [l1, l2, l3, l4] = self.colors.map(|c| c.0);
        w.contains(l1 + l2 - self.internal) && w.contains(l3 + l4 + self.internal)
    }
}

impl IGraph {
    pub fn is_admissible(&self, p: &QParams) -> bool {
        let w = fusion_window(p);
        let [l1, l2, l3, l4] = self.colors.map(|c| c.0);
        w.contains(l1 + l4 - self.internal) && w.contains(l2 + l3 + self.internal)
    }
}

/// Internal colors β = λ1+λ2+h, h running down the window, passing both vertex conditions.
pub fn admissible_betas(p: &QParams, colors: [Color; 4]) -> Vec<Complex64> {
    let w = fusion_window(p);
    let s12 = colors[0].0 + colors[1].0;
    w.values
        .iter()
        .map(|&h| s12 + h as f64)
        .filter(|&beta| {
            HGraph {
                colors,
                internal: beta,
            }
            .is_admissible(p)
        })
        .collect()
}

/// Internal colors γ = λ1+λ4+h of the I-graph basis, same ordering.
pub fn admissible_gammas(p: &QParams, colors: [Color; 4]) -> Vec<Complex64> {
    let w = fusion_window(p);
    let s14 = colors[0].0 + colors[3].0;
    w.values
        .iter()
        .map(|&h| s14 + h as f64)
        .filter(|&gamma| {
            IGraph {
                colors,
                internal: gamma,
            }
            .is_admissible(p)
        })
        .collect()
}

fn as_int(z: Complex64) -> Option<i64> {
    let n = z.re.round();
    ((z - n).norm() < INTEGRALITY_TOL).then_some(n as i64)
}

fn require_int(z: Complex64, what: &str) -> Result<i64> {
    as_int(z).ok_or_else(|| Error::InadmissibleSixJ(format!("{what} = {z} is not an integer")))
}

fn require_count(z: Complex64, what: &str) -> Result<u32> {
    let n = require_int(z, what)?;
    u32::try_from(n).map_err(|_| Error::InadmissibleSixJ(format!("{what} = {n} is negative")))
}

/// Binomial with possibly complex bottom, resolved through the complement when needed.
fn qbin(p: &QParams, top: Complex64, bottom: Complex64) -> Result<QScalar> {
    let k = match as_int(bottom) {
        Some(k) => k,
        None => match as_int(top - bottom) {
            Some(k) => k,
            None => {
                return Err(Error::InadmissibleSixJ(format!(
                    "binomial ({top} over {bottom}) has no integer bottom"
                )))
            }
        },
    };
    if k < 0 {
        return Ok(Complex64::ZERO);
    }
    p.qbinom(top, k as u32)
}

/// The 6j-symbol of the H/I change of basis.
pub fn sixj(p: &QParams, j: [Complex64; 6]) -> Result<QScalar> {
    let r1 = p.rf() - 1.0;
    let jj = |k: usize| j[k - 1];
    let a = |x: usize, y: usize, z: usize| (jj(x) + jj(y) + jj(z) + 3.0 * r1) / 2.0;
    let b = |x: usize, y: usize, z: usize| (jj(x) + jj(y) - jj(z) + r1) / 2.0;
    let b165 = require_count(b(1, 6, 5), "B165")?;
    let b345 = require_count(b(3, 4, 5), "B345")?;
    let b123 = require_count(b(1, 2, 3), "B123")?;
    let b246 = require_count(b(2, 4, 6), "B246")?;
    let b435 = require_count(b(4, 3, 5), "B435")?;
    let sign = if (p.r as i64 - 1 + b165 as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    };
    let den = p.qfact(b246) * p.qfact(b165);
    if den.norm() < crate::qscalar::ZERO_TOL {
        return Err(Error::DivisionByZero("6j factorial denominator".into()));
    }
    let mut pre = sign * p.qfact(b345) * p.qfact(b123) / den;
    let top = jj(3) + r1;
    let bin_den = qbin(p, top, b(3, 5, 4))?;
    if bin_den.norm() < crate::qscalar::ZERO_TOL {
        return Err(Error::DivisionByZero("6j binomial denominator".into()));
    }
    pre *= qbin(p, top, a(1, 2, 3) + 1.0 - p.rf())? / bin_den;
    let lower = require_int(
        (jj(3) + jj(6) - jj(2) - jj(5)) / 2.0,
        "lower summation bound",
    )?
    .max(0);
    let upper = b435.min(b165) as i64;
    let mut sum = Complex64::ZERO;
    for z in lower..=upper {
        let zf = z as f64;
        let term = qbin(p, a(1, 6, 5) + 1.0, jj(5) + zf + p.rf())?
            * qbin(p, b(1, 5, 6) + zf, b(1, 5, 6))?
            * qbin(p, b(2, 6, 4) + b(3, 4, 5) - zf, b(2, 6, 4))?
            * qbin(p, b(4, 5, 3) + zf, b(4, 6, 2))?;
        sum += if z % 2 == 0 { term } else { -term };
    }
    Ok(pre * sum)
}

/// Entry [row ε, col k] = d(γ_ε) · sixj(λ1, λ2, β_k, λ3, -λ4, -γ_ε).
fn h_to_i_raw(
    p: &QParams,
    colors: [Color; 4],
) -> Result<(Vec<Complex64>, Vec<Complex64>, CMatrix)> {
    let betas = admissible_betas(p, colors);
    let gammas = admissible_gammas(p, colors);
    if betas.is_empty() || gammas.is_empty() {
        return Err(Error::InadmissibleSixJ(
            "colors admit no internal edge".into(),
        ));
    }
    let [l1, l2, l3, l4] = colors.map(|c| c.0);
    let mut m = CMatrix::zeros(gammas.len(), betas.len());
    for (row, &g) in gammas.iter().enumerate() {
        let d = p.modified_dim(Color(g))?;
        for (col, &b) in betas.iter().enumerate() {
            m[(row, col)] = d * sixj(p, [l1, l2, b, l3, -l4, -g])?;
        }
    }
    Ok((betas, gammas, m))
}

/// Change of basis from H-graphs to I-graphs.
pub fn h_to_i_matrix(p: &QParams, colors: [Color; 4]) -> Result<ModuleMap> {
    let (betas, gammas, m) = h_to_i_raw(p, colors)?;
    Ok(ModuleMap::new(
        betas
            .iter()
            .map(|&b| BasisLabel::HGraph {
                colors,
                internal: b,
            })
            .collect(),
        gammas
            .iter()
            .map(|&g| BasisLabel::IGraph {
                colors,
                internal: g,
            })
            .collect(),
        m,
    ))
}

/// Change of basis from I-graphs back to H-graphs: an I-graph on (λ1,λ2,λ3,λ4)
/// is the H-graph on (λ1,λ4,λ3,λ2).
pub fn i_to_h_matrix(p: &QParams, colors: [Color; 4]) -> Result<ModuleMap> {
    let [l1, l2, l3, l4] = colors;
    let (gammas, betas, m) = h_to_i_raw(p, [l1, l4, l3, l2])?;
    Ok(ModuleMap::new(
        gammas
            .iter()
            .map(|&g| BasisLabel::IGraph {
                colors,
                internal: g,
            })
            .collect(),
        betas
            .iter()
            .map(|&b| BasisLabel::HGraph {
                colors,
                internal: b,
            })
            .collect(),
        m,
    ))
}

/// q^{(-λ² - μ² + β² + (r-1)²)/4}
pub fn half_twist_phase(p: &QParams, lambda: Complex64, mu: Complex64, beta: Complex64) -> QScalar {
    let r1 = p.rf() - 1.0;
    p.q_pow((-lambda * lambda - mu * mu + beta * beta + r1 * r1) / 4.0)
}
