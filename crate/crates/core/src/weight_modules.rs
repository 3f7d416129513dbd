//! Typical modules V_λ and tensor product actions.

use crate::error::{Error, Result};
use crate::linalg::{identity, inverse, kron_all, CMatrix};
use crate::qscalar::QParams;
use num_complex::Complex64;

pub const TYPICAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Color(pub Complex64);

impl Color {
    pub fn new(re: f64, im: f64) -> Self {
        Color(Complex64::new(re, im))
    }
}

impl From<Complex64> for Color {
    fn from(z: Complex64) -> Self {
        Color(z)
    }
}

/// λ is typical iff it lies in (C \ Z) ∪ rZ.
pub fn is_typical(p: &QParams, lambda: Color) -> bool {
    let z = lambda.0;
    let n = z.re.round();
    let dist = Complex64::new(z.re - n, z.im).norm();
    dist > TYPICAL_TOL || (n as i64).rem_euclid(p.r as i64) == 0
}

pub fn check_typical(p: &QParams, lambda: Color) -> Result<()> {
    if is_typical(p, lambda) {
        Ok(())
    } else {
        Err(Error::AtypicalColor(lambda.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BasisLabel {
    /// Tensor basis vector e_{i1}^{λ1} ⊗ ... ⊗ e_{in}^{λn}.
    Tensor(Vec<(Color, usize)>),
    /// H-graph with boundary colors and internal edge β.
    HGraph {
        colors: [Color; 4],
        internal: Complex64,
    },
    /// I-graph with boundary colors and internal edge γ.
    IGraph {
        colors: [Color; 4],
        internal: Complex64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleMap {
    pub domain: Vec<BasisLabel>,
    pub codomain: Vec<BasisLabel>,
    pub matrix: CMatrix,
}

impl ModuleMap {
    pub fn new(domain: Vec<BasisLabel>, codomain: Vec<BasisLabel>, matrix: CMatrix) -> Self {
        assert_eq!(matrix.ncols(), domain.len(), "domain labels");
        assert_eq!(matrix.nrows(), codomain.len(), "codomain labels");
        ModuleMap {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn endo(labels: Vec<BasisLabel>, matrix: CMatrix) -> Self {
        Self::new(labels.clone(), labels, matrix)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.domain, other.codomain, "label mismatch in composition");
        ModuleMap::new(
            other.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &other.matrix,
        )
    }
}

/// Lexicographic tensor basis, leftmost factor most significant.
pub fn tensor_labels(r: usize, colors: &[Color]) -> Vec<BasisLabel> {
    let n = colors.len();
    let total = r.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut digits = vec![0; n];
            for k in (0..n).rev() {
                digits[k] = idx % r;
                idx /= r;
            }
            BasisLabel::Tensor(colors.iter().copied().zip(digits).collect())
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    K,
    H,
}

#[derive(Debug, Clone)]
pub struct TypicalModule {
    pub params: QParams,
    pub color: Color,
    pub dim: usize,
    pub h: CMatrix,
    pub e: CMatrix,
    pub f: CMatrix,
    pub k: CMatrix,
}

impl TypicalModule {
    pub fn weight(&self, i: usize) -> Complex64 {
        self.color.0 + (self.dim as f64 - 1.0 - 2.0 * i as f64)
    }

    pub fn labels(&self) -> Vec<BasisLabel> {
        tensor_labels(self.dim, &[self.color])
    }

    pub fn action(&self, g: Generator) -> &CMatrix {
        match g {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::K => &self.k,
            Generator::H => &self.h,
        }
    }

    pub fn k_inv(&self) -> CMatrix {
        CMatrix::from_diagonal(&self.k.diagonal().map(|z| z.inv()))
    }
}

pub fn typical_module(p: &QParams, lambda: Color) -> Result<TypicalModule> {
    check_typical(p, lambda)?;
    let r = p.r as usize;
    let lam = lambda.0;
    let weight = |i: usize| lam + (r as f64 - 1.0 - 2.0 * i as f64);
    let h = CMatrix::from_fn(
        r,
        r,
        |i, j| if i == j { weight(i) } else { Complex64::ZERO },
    );
    let k = CMatrix::from_fn(r, r, |i, j| {
        if i == j {
            p.q_pow(weight(i))
        } else {
            Complex64::ZERO
        }
    });
    let one2 = p.qnum_int(1).powi(2);
    let mut e = CMatrix::zeros(r, r);
    let mut f = CMatrix::zeros(r, r);
    for i in 1..r {
        e[(i - 1, i)] = p.qnum_int(i as i64) * p.qnum(Complex64::new(i as f64, 0.0) - lam) / one2;
    }
    for i in 0..r - 1 {
        f[(i + 1, i)] = Complex64::new(1.0, 0.0);
    }
    Ok(TypicalModule {
        params: *p,
        color: lambda,
        dim: r,
        h,
        e,
        f,
        k,
    })
}

/// Action of a generator on V_1 ⊗ ... ⊗ V_n through the iterated coproduct.
pub fn tensor_action(p: &QParams, g: Generator, factors: &[TypicalModule]) -> Result<ModuleMap> {
    if factors.is_empty() {
        return Err(Error::Config(
            "tensor_action needs at least one factor".into(),
        ));
    }
    let r = p.r as usize;
    let colors: Vec<Color> = factors.iter().map(|m| m.color).collect();
    let labels = tensor_labels(r, &colors);
    let id = identity(r);
    let n = factors.len();
    let matrix = match g {
        Generator::K => {
            let ks: Vec<&CMatrix> = factors.iter().map(|m| &m.k).collect();
            kron_all(&ks)
        }
        _ => {
            let kinv: Vec<CMatrix> = factors.iter().map(|m| m.k_inv()).collect();
            let mut total = CMatrix::zeros(labels.len(), labels.len());
            for pos in 0..n {
                let parts: Vec<&CMatrix> = (0..n)
                    .map(|j| match (g, j.cmp(&pos)) {
                        (_, std::cmp::Ordering::Equal) => factors[j].action(g),
                        (Generator::E, std::cmp::Ordering::Greater) => &factors[j].k,
                        (Generator::F, std::cmp::Ordering::Less) => &kinv[j],
                        _ => &id,
                    })
                    .collect();
                total += kron_all(&parts);
            }
            total
        }
    };
    Ok(ModuleMap::endo(labels, matrix))
}

/// Deviations from the defining relations for matrices (H, E, F, K) with H diagonal.
pub fn relation_defects(
    p: &QParams,
    h: &CMatrix,
    e: &CMatrix,
    f: &CMatrix,
    k: &CMatrix,
) -> Result<Vec<(&'static str, f64)>> {
    use crate::linalg::max_dev;
    let kinv = inverse(k, "K")?;
    let q2 = p.q * p.q;
    let one = p.qnum_int(1);
    let n = h.nrows();
    let mut khat = CMatrix::zeros(n, n);
    for i in 0..n {
        khat[(i, i)] = p.q_pow(h[(i, i)]);
    }
    Ok(vec![
        ("K E K^-1 = q^2 E", max_dev(&(k * e * &kinv), &(e * q2))),
        ("K F K^-1 = q^-2 F", max_dev(&(k * f * &kinv), &(f / q2))),
        (
            "[E,F] = (K - K^-1)/(q - q^-1)",
            max_dev(&(e * f - f * e), &((k - &kinv) / one)),
        ),
        (
            "[H,E] = 2E",
            max_dev(&(h * e - e * h), &(e * Complex64::new(2.0, 0.0))),
        ),
        (
            "[H,F] = -2F",
            max_dev(&(h * f - f * h), &(f * Complex64::new(-2.0, 0.0))),
        ),
        ("HK = KH", max_dev(&(h * k), &(k * h))),
        ("K = q^H", max_dev(k, &khat)),
    ])
}
