//! Projective representation of M(0,4) on the H-graph basis.

use crate::braiding::Letter;
use crate::error::{Error, Result};
use crate::graph_basis::{admissible_betas, admissible_gammas, h_to_i_matrix};
use crate::groups::Perm4;
use crate::linalg::{identity, inverse, projective_dev, CMatrix};
use crate::qscalar::QParams;
use crate::weight_modules::{check_typical, BasisLabel, Color, ModuleMap};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

pub const COLOR_SUM_TOL: f64 = 1e-9;
pub const GENERIC_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MCGWord {
    pub letters: Vec<Letter>,
}

impl MCGWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if !(1..=3).contains(&l.index) {
                return Err(Error::IndexOutOfRange {
                    index: l.index,
                    max: 3,
                });
            }
        }
        Ok(MCGWord { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> MCGWord {
        MCGWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &MCGWord) -> MCGWord {
        MCGWord {
            letters: [self.letters.as_slice(), other.letters.as_slice()].concat(),
        }
    }

    pub fn pow(&self, k: usize) -> MCGWord {
        MCGWord {
            letters: self.letters.repeat(k),
        }
    }

    /// Digits with a trailing ' for inverses, e.g. "1 3'". Test shorthand.
    #[doc(hidden)]
    pub fn parse_compact(s: &str) -> MCGWord {
        let letters = s
            .split_whitespace()
            .map(|t| {
                let inv = t.ends_with('\'');
                Letter::new(t.trim_end_matches('\'').parse().unwrap(), inv)
            })
            .collect();
        MCGWord::new(letters).unwrap()
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("s{}{}", l.index, if l.inverse { "^-1" } else { "" }))
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Tokens s1, s2, s3 with optional ^-1, separated by whitespace.
impl FromStr for MCGWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = crate::cli::parse_tokens(s, 's', 3)?;
        MCGWord::new(letters)
    }
}

/// The five defining relators of M(0,4), each equal to 1.
pub fn sphere_relators() -> Vec<(&'static str, MCGWord)> {
    let w = MCGWord::parse_compact;
    vec![
        ("s1 s3 = s3 s1", w("1 3 1' 3'")),
        ("s1 s2 s1 = s2 s1 s2", w("1 2 1 2' 1' 2'")),
        ("s3 s2 s3 = s2 s3 s2", w("3 2 3 2' 3' 2'")),
        ("(s1 s2 s3)^4 = 1", w("1 2 3").pow(4)),
        ("s1 s2 s3^2 s2 s1 = 1", w("1 2 3 3 2 1")),
    ]
}

/// The relations as (lhs, rhs) pairs.
pub fn sphere_relations() -> Vec<(&'static str, MCGWord, MCGWord)> {
    let w = MCGWord::parse_compact;
    vec![
        ("s1 s3 = s3 s1", w("1 3"), w("3 1")),
        ("s1 s2 s1 = s2 s1 s2", w("1 2 1"), w("2 1 2")),
        ("s3 s2 s3 = s2 s3 s2", w("3 2 3"), w("2 3 2")),
        ("(s1 s2 s3)^4 = 1", w("1 2 3").pow(4), w("")),
        ("s1 s2 s3^2 s2 s1 = 1", w("1 2 3 3 2 1"), w("")),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepSpace {
    pub params: QParams,
    pub colors: [Color; 4],
    pub basis: Vec<Complex64>,
    pub permutation_sector: Perm4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveBlockMap {
    pub matrix: ModuleMap,
    pub src_perm: Perm4,
    pub dst_perm: Perm4,
}

pub fn rep_space(p: &QParams, colors: [Color; 4]) -> Result<RepSpace> {
    let sum: Complex64 = colors.iter().map(|c| c.0).sum();
    let scale = colors.iter().map(|c| c.0.norm()).fold(1.0, f64::max);
    if sum.norm() > COLOR_SUM_TOL * scale {
        return Err(Error::ColorSumNonzero(sum));
    }
    for c in colors {
        check_typical(p, c)?;
    }
    let basis = admissible_betas(p, colors);
    if basis.len() != p.r as usize {
        return Err(Error::ColorSumNonzero(sum));
    }
    Ok(RepSpace {
        params: *p,
        colors,
        basis,
        permutation_sector: Perm4::identity(),
    })
}

/// λ4 = -(λ1 + λ2 + λ3).
pub fn close_colors(l: [Color; 3]) -> [Color; 4] {
    [l[0], l[1], l[2], Color(-(l[0].0 + l[1].0 + l[2].0))]
}

/// (λ, λ, λ, -3λ)
pub fn unicolored(lambda: Complex64) -> [Color; 4] {
    close_colors([Color(lambda); 3])
}

/// The closed-form variable attached to a color: A = q^λ.
pub fn color_variable(p: &QParams, c: Color) -> Complex64 {
    p.q_pow(c.0)
}

/// Inverse of `color_variable` on the principal branch of the logarithm.
pub fn color_from_variable(p: &QParams, a: Complex64) -> Result<Color> {
    if a.norm() < GENERIC_GUARD {
        return Err(Error::DegenerateParameter(a));
    }
    Ok(Color(
        a.ln() * p.rf() / (Complex64::i() * std::f64::consts::PI),
    ))
}

fn swapped(colors: [Color; 4], i: usize) -> [Color; 4] {
    let mut c = colors;
    c.swap(i - 1, i);
    c
}

fn sigma_phase(p: &QParams, x: Complex64, y: Complex64, internal: Complex64) -> Complex64 {
    p.q_pow((-x * x - y * y + internal * internal + (p.rf() - 1.0)) / 4.0)
}

/// Diagonal change of basis making the r = 2 blocks agree with the closed forms.
fn gauge(p: &QParams, colors: [Color; 4]) -> Vec<Complex64> {
    let r = p.r as usize;
    let [l1, l2, l3, l4] = colors.map(|c| c.0);
    (0..r)
        .map(|k| {
            let top: Complex64 = (1..r - k)
                .map(|j| p.qnum(l1 + j as f64) * p.qnum(l2 + j as f64))
                .product();
            let bottom: Complex64 = (1..=k)
                .map(|j| p.qnum(l3 + j as f64) * p.qnum(l4 + j as f64))
                .product();
            top * bottom
        })
        .collect()
}

fn framing(p: &QParams, colors: [Color; 4], i: usize) -> Complex64 {
    let (x, y) = (colors[i - 1].0, colors[i].0);
    p.q_pow((2.0 * x * y + p.rf()) / 4.0)
}

/// Block of σ_i from the H-basis on `colors` to the H-basis on the swapped colors.
pub fn sigma_block(p: &QParams, colors: [Color; 4], i: usize, normalized: bool) -> Result<CMatrix> {
    let [l1, l2, l3, l4] = colors.map(|c| c.0);
    let betas = admissible_betas(p, colors);
    let raw = match i {
        1 => CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            betas.len(),
            betas.iter().map(|&b| sigma_phase(p, l1, l2, b)),
        )),
        3 => CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            betas.len(),
            betas.iter().map(|&b| sigma_phase(p, l3, l4, b)),
        )),
        2 => {
            let to_i = h_to_i_matrix(p, colors)?.matrix;
            let gammas = admissible_gammas(p, colors);
            let twist = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                gammas.len(),
                gammas.iter().map(|&g| sigma_phase(p, l2, l3, g)),
            ));
            // I-graphs on (λ1,λ2,λ3,λ4) after the twist are H-graphs on (λ1,λ3,λ2,λ4)
            let back = h_to_i_matrix(p, [colors[0], colors[3], colors[1], colors[2]])?.matrix;
            back * twist * to_i
        }
        _ => return Err(Error::IndexOutOfRange { index: i, max: 3 }),
    };
    if !normalized {
        return Ok(raw);
    }
    let src = gauge(p, colors);
    let dst = gauge(p, swapped(colors, i));
    let f = framing(p, colors, i);
    Ok(CMatrix::from_fn(raw.nrows(), raw.ncols(), |a, b| {
        raw[(a, b)] * dst[a] / (src[b] * f)
    }))
}

fn h_labels(colors: [Color; 4], betas: &[Complex64]) -> Vec<BasisLabel> {
    betas
        .iter()
        .map(|&b| BasisLabel::HGraph {
            colors,
            internal: b,
        })
        .collect()
}

pub fn sigma_matrix(
    p: &QParams,
    space: &RepSpace,
    i: usize,
    normalized: bool,
) -> Result<ProjectiveBlockMap> {
    let colors = space.colors;
    let m = sigma_block(p, colors, i, normalized)?;
    let target = swapped(colors, i);
    Ok(ProjectiveBlockMap {
        matrix: ModuleMap::new(
            h_labels(colors, &space.basis),
            h_labels(target, &admissible_betas(p, target)),
            m,
        ),
        src_perm: space.permutation_sector,
        dst_perm: Perm4::transposition(i).compose(&space.permutation_sector),
    })
}

/// Φ(w1 w2 ... wk) = Φ(w1) ∘ ... ∘ Φ(wk): the rightmost letter acts first.
pub fn evaluate_word(
    p: &QParams,
    space: &RepSpace,
    word: &MCGWord,
    normalized: bool,
) -> Result<ProjectiveBlockMap> {
    let mut colors = space.colors;
    let mut total = identity(space.basis.len());
    for l in word.letters.iter().rev() {
        let block = if l.inverse {
            inverse(
                &sigma_block(p, swapped(colors, l.index), l.index, normalized)?,
                "inverse generator",
            )?
        } else {
            sigma_block(p, colors, l.index, normalized)?
        };
        total = block * total;
        colors = swapped(colors, l.index);
    }
    Ok(ProjectiveBlockMap {
        matrix: ModuleMap::new(
            h_labels(space.colors, &space.basis),
            h_labels(colors, &admissible_betas(p, colors)),
            total,
        ),
        src_perm: space.permutation_sector,
        dst_perm: crate::groups::perm_of_word(word).compose(&space.permutation_sector),
    })
}

/// Relative residual after removing the best global scalar; infinite when the
/// puncture permutations or shapes differ.
pub fn projective_deviation(m: &ProjectiveBlockMap, n: &ProjectiveBlockMap) -> f64 {
    if m.src_perm != n.src_perm || m.dst_perm != n.dst_perm {
        return f64::INFINITY;
    }
    projective_dev(&m.matrix.matrix, &n.matrix.matrix)
}

pub fn projectively_equal(m: &ProjectiveBlockMap, n: &ProjectiveBlockMap, tol: f64) -> bool {
    projective_deviation(m, n) <= tol
}

/// Deviation of Φ(w) from the identity class (same permutation required).
pub fn triviality_deviation(m: &ProjectiveBlockMap) -> f64 {
    if m.src_perm != m.dst_perm {
        return f64::INFINITY;
    }
    crate::linalg::projective_identity_dev(&m.matrix.matrix)
}

fn guard(a: Complex64) -> Result<()> {
    if a.norm() < GENERIC_GUARD || (a * a - 1.0).norm() < GENERIC_GUARD {
        Err(Error::DegenerateParameter(a))
    } else {
        Ok(())
    }
}

fn m2(rows: [[Complex64; 2]; 2]) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[rows[0][0], rows[0][1], rows[1][0], rows[1][1]])
}

/// diag(√(A1A2), 1/√(A1A2)), principal branch.
pub fn closed_sigma1(a: [Complex64; 3]) -> CMatrix {
    let s = (a[0] * a[1]).sqrt();
    m2([[s, Complex64::ZERO], [Complex64::ZERO, s.inv()]])
}

pub fn closed_sigma2(a: [Complex64; 3]) -> CMatrix {
    let [a1, a2, a3] = a;
    let one = Complex64::new(1.0, 0.0);
    let pre = a2 * a2 * a3 * a3 - 1.0;
    m2([
        [
            -(one + a3 * a3) / (a1 * a2 * a3 * a3),
            -(one + a1 * a1) / (a1 * a3),
        ],
        [
            (a1 * a1 * a2 * a2 * a3 * a3 + 1.0) / (a1 * a2 * a2 * a3),
            (a2 * a2 + 1.0) * a1 / a2,
        ],
    ]) * pre
}

pub fn qs(a: Complex64) -> Result<CMatrix> {
    guard(a)?;
    let a2 = a * a;
    let one = Complex64::new(1.0, 0.0);
    Ok(m2([[-one, -a2], [(a2 - 1.0).powi(2) / a2 + 1.0, a2]]) / (a2 - 1.0))
}

pub fn qt(a: Complex64) -> Result<CMatrix> {
    guard(a)?;
    let a2 = a * a;
    Ok(m2([[-a, -a], [(a2 - 1.0).powi(2) / a + a, a]]) / (a2 - 1.0))
}

/// P = [[0, 1], [(A²-1)/A, -1]]
pub fn p_matrix(a: Complex64) -> Result<CMatrix> {
    guard(a)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(m2([[Complex64::ZERO, one], [(a * a - 1.0) / a, -one]]))
}

pub fn conjugate_by_p(a: Complex64, m: &CMatrix) -> Result<CMatrix> {
    let p = p_matrix(a)?;
    Ok(inverse(&p, "P")? * m * p)
}

/// CT(A) = [[0, 1/A], [-A, 1]]
pub fn closed_ct(a: Complex64) -> CMatrix {
    m2([[Complex64::ZERO, a.inv()], [-a, Complex64::new(1.0, 0.0)]])
}

/// Scale a 2x2 matrix to determinant one (principal square root).
pub fn det_normalize(m: &CMatrix) -> CMatrix {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    m / det.sqrt()
}
