//! Permutation image, PSL(2,Z) image and the word problem in M(0,4).

use crate::braiding::Letter;
use crate::m04::MCGWord;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

const SMALL_BOUND: i128 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Entries {
    Small([[i64; 2]; 2]),
    Big(Box<[[BigInt; 2]; 2]>),
}

/// Exact 2x2 integer matrix; machine words until an entry exceeds 2^62.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat2(Entries);

impl IntMat2 {
    pub fn new(m: [[i64; 2]; 2]) -> Self {
        IntMat2(Entries::Small(m))
    }

    pub fn identity() -> Self {
        Self::new([[1, 0], [0, 1]])
    }

    /// [[1,1],[0,1]]
    pub fn a() -> Self {
        Self::new([[1, 1], [0, 1]])
    }

    /// [[1,0],[-1,1]]
    pub fn b() -> Self {
        Self::new([[1, 0], [-1, 1]])
    }

    fn from_big(m: [[BigInt; 2]; 2]) -> Self {
        let small = m
            .iter()
            .flatten()
            .all(|x| x.abs() <= BigInt::from(SMALL_BOUND));
        if small {
            let g = |i: usize, j: usize| m[i][j].to_i64().unwrap();
            IntMat2::new([[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]])
        } else {
            IntMat2(Entries::Big(Box::new(m)))
        }
    }

    pub fn entries(&self) -> [[BigInt; 2]; 2] {
        match &self.0 {
            Entries::Small(m) => m.map(|row| row.map(BigInt::from)),
            Entries::Big(m) => (**m).clone(),
        }
    }

    pub fn as_i64(&self) -> Option<[[i64; 2]; 2]> {
        match &self.0 {
            Entries::Small(m) => Some(*m),
            Entries::Big(_) => None,
        }
    }

    pub fn is_big(&self) -> bool {
        matches!(self.0, Entries::Big(_))
    }

    pub fn mul(&self, other: &IntMat2) -> IntMat2 {
        if let (Entries::Small(x), Entries::Small(y)) = (&self.0, &other.0) {
            let mut out = [[0i128; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] =
                        x[i][0] as i128 * y[0][j] as i128 + x[i][1] as i128 * y[1][j] as i128;
                }
            }
            if out.iter().flatten().all(|v| v.abs() <= SMALL_BOUND) {
                return IntMat2::new(out.map(|row| row.map(|v| v as i64)));
            }
        }
        let (x, y) = (self.entries(), other.entries());
        let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        IntMat2::from_big([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn neg(&self) -> IntMat2 {
        let m = self.entries();
        IntMat2::from_big(m.map(|row| row.map(|v| -v)))
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> IntMat2 {
        let [[a, b], [c, d]] = self.entries();
        IntMat2::from_big([[d, -b], [-c, a]])
    }

    pub fn det(&self) -> BigInt {
        let [[a, b], [c, d]] = self.entries();
        a * d - b * c
    }

    pub fn trace_f64(&self) -> f64 {
        let m = self.entries();
        (&m[0][0] + &m[1][1]).to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.entries();
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// Element of PSL(2,Z), stored with its first nonzero row-major entry positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PSL2ZElement {
    pub matrix: IntMat2,
}

impl PSL2ZElement {
    pub fn new(m: IntMat2) -> Self {
        let first = m.entries().iter().flatten().find(|x| !x.is_zero()).cloned();
        let matrix = match first {
            Some(x) if x.is_negative() => m.neg(),
            _ => m,
        };
        PSL2ZElement { matrix }
    }

    pub fn identity() -> Self {
        PSL2ZElement {
            matrix: IntMat2::identity(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMat2::identity()
    }

    /// Eigenvalues (t ± sqrt(t² - 4))/2 of the canonical representative.
    pub fn eigenvalues(&self) -> [num_complex::Complex64; 2] {
        let t = num_complex::Complex64::new(self.matrix.trace_f64(), 0.0);
        let disc = (t * t - 4.0).sqrt();
        [(t + disc) / 2.0, (t - disc) / 2.0]
    }
}

impl fmt::Display for PSL2ZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// images[i] is where puncture i+1 is sent (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4 {
    pub images: [usize; 4],
}

impl Perm4 {
    pub fn identity() -> Self {
        Perm4 {
            images: [0, 1, 2, 3],
        }
    }

    /// Transposition of punctures i and i+1, i 1-based.
    pub fn transposition(i: usize) -> Self {
        let mut images = [0, 1, 2, 3];
        images.swap(i - 1, i);
        Perm4 { images }
    }

    /// self ∘ other
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4 {
            images: other.images.map(|k| self.images[k]),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm4::identity()
    }

    /// 1-based images, for reports.
    pub fn one_based(&self) -> [usize; 4] {
        self.images.map(|k| k + 1)
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.one_based();
        write!(f, "[{a}, {b}, {c}, {d}]")
    }
}

/// Product τ_{w1} ∘ τ_{w2} ∘ ... of the letter transpositions.
pub fn perm_of_word(word: &MCGWord) -> Perm4 {
    word.letters.iter().fold(Perm4::identity(), |acc, l| {
        acc.compose(&Perm4::transposition(l.index))
    })
}

fn letter_matrix(l: &Letter) -> IntMat2 {
    let m = if l.index == 2 {
        IntMat2::b()
    } else {
        IntMat2::a()
    };
    if l.inverse {
        m.inverse_sl2()
    } else {
        m
    }
}

/// Exact integer product of the letter images (σ1, σ3 ↦ A, σ2 ↦ B), not reduced mod ±I.
pub fn sl2z_image(word: &MCGWord) -> IntMat2 {
    word.letters
        .iter()
        .fold(IntMat2::identity(), |acc, l| acc.mul(&letter_matrix(l)))
}

pub fn psl2z_image(word: &MCGWord) -> PSL2ZElement {
    PSL2ZElement::new(sl2z_image(word))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NPart {
    One,
    Na,
    Nb,
    NaNb,
}

impl NPart {
    /// n_a = σ1 σ3^-1, n_b = σ2 σ1 σ3^-1 σ2^-1.
    pub fn word(&self) -> MCGWord {
        let na = [Letter::new(1, false), Letter::new(3, true)];
        let nb = [
            Letter::new(2, false),
            Letter::new(1, false),
            Letter::new(3, true),
            Letter::new(2, true),
        ];
        let letters = match self {
            NPart::One => vec![],
            NPart::Na => na.to_vec(),
            NPart::Nb => nb.to_vec(),
            NPart::NaNb => [na.as_slice(), nb.as_slice()].concat(),
        };
        MCGWord { letters }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub g_matrix: PSL2ZElement,
    pub n_part: NPart,
}

/// w = n · g with g in the subgroup generated by σ1, σ2 (which fixes p4).
pub fn semidirect_decompose(word: &MCGWord) -> Decomposition {
    let n_part = match perm_of_word(word).images[3] {
        3 => NPart::One,
        2 => NPart::Na,
        1 => NPart::Nb,
        _ => NPart::NaNb,
    };
    Decomposition {
        g_matrix: psl2z_image(word),
        n_part,
    }
}

/// True iff the word is trivial in M(0,4).
pub fn word_problem(word: &MCGWord) -> bool {
    perm_of_word(word).is_identity() && psl2z_image(word).is_identity()
}

/// A word in σ1, σ2 whose PSL(2,Z) image is g.
pub fn g_word(g: &PSL2ZElement) -> MCGWord {
    // Right-multiply by powers of A (b += k a) and B (a -= k b) until the first
    // row is (±1, 0); then g = ±B^j X^-1 where X is the recorded product.
    let [[mut a, mut b], [mut c, mut d]] = g.matrix.entries();
    let mut ops: Vec<(usize, BigInt)> = Vec::new();
    while !b.is_zero() {
        if a.is_zero() {
            a = &a + &b;
            c = &c + &d;
            ops.push((2, -BigInt::one()));
        } else if a.abs() <= b.abs() {
            let k = -(&b / &a);
            b = &b + &k * &a;
            d = &d + &k * &c;
            ops.push((1, k));
        } else {
            let k = &a / &b;
            a = &a - &k * &b;
            c = &c - &k * &d;
            ops.push((2, k));
        }
    }
    let power = |index: usize, k: &BigInt| {
        let n = k.abs().to_usize().expect("exponent fits in usize");
        std::iter::repeat_n(Letter::new(index, k.is_negative()), n)
    };
    let j = -(&c * &a);
    let mut letters: Vec<Letter> = power(2, &j).collect();
    for (index, k) in ops.iter().rev() {
        letters.extend(power(*index, &-k));
    }
    MCGWord { letters }
}

#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub checks: Vec<(String, bool)>,
}

impl PresentationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub fn presentation_check() -> PresentationReport {
    let a = IntMat2::a();
    let b = IntMat2::b();
    let id = IntMat2::identity();
    let minus = id.neg();
    let aba = a.mul(&b).mul(&a);
    let bab = b.mul(&a).mul(&b);
    let s = a.mul(&b);
    let t = aba.clone();
    let pow = |m: &IntMat2, k: usize| (0..k).fold(IntMat2::identity(), |acc, _| acc.mul(m));
    let mut checks = vec![
        ("ABA = BAB".to_string(), aba == bab),
        (
            "ABA = [[0,1],[-1,0]]".to_string(),
            aba == IntMat2::new([[0, 1], [-1, 0]]),
        ),
        ("(ABA)^4 = I".to_string(), pow(&aba, 4) == id),
        (
            "S = AB = [[0,1],[-1,1]]".to_string(),
            s == IntMat2::new([[0, 1], [-1, 1]]),
        ),
        ("S^3 = -I".to_string(), pow(&s, 3) == minus),
        ("T^2 = -I".to_string(), pow(&t, 2) == minus),
        ("s^-1 t = a".to_string(), s.inverse_sl2().mul(&t) == a),
        (
            "t^-1 s^2 = b".to_string(),
            t.inverse_sl2().mul(&s).mul(&s) == b,
        ),
        (
            "det A = det B = 1".to_string(),
            a.det() == BigInt::one() && b.det() == BigInt::one(),
        ),
    ];
    for (name, rel) in crate::m04::sphere_relators() {
        checks.push((
            format!("relator {name} maps to ±I"),
            psl2z_image(&rel).is_identity(),
        ));
    }
    PresentationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> MCGWord {
        crate::m04::MCGWord::parse_compact(s)
    }

    #[test]
    fn perm_examples() {
        let na = perm_of_word(&w("1 3'"));
        assert_eq!(na.one_based(), [2, 1, 4, 3]);
        assert_eq!(na.images[3], 2);
        let nb = perm_of_word(&w("2 1 3' 2'"));
        assert_eq!(nb.images[3], 1);
        assert_eq!(nb.one_based(), [3, 4, 1, 2]);
        assert!(perm_of_word(&w("")).is_identity());
    }

    #[test]
    fn psl_examples() {
        assert_eq!(
            psl2z_image(&w("1 2")).matrix,
            IntMat2::new([[0, 1], [-1, 1]])
        );
        let t = psl2z_image(&w("1 2 1"));
        assert_eq!(t.matrix, IntMat2::new([[0, 1], [-1, 0]]));
        assert!(psl2z_image(&w("1 2 1 1 2 1")).is_identity());
        assert!(psl2z_image(&w("1 3'")).is_identity());
    }

    #[test]
    fn canonical_sign() {
        let m = PSL2ZElement::new(IntMat2::new([[0, -1], [1, 0]]));
        assert_eq!(m.matrix, IntMat2::new([[0, 1], [-1, 0]]));
        let m = PSL2ZElement::new(IntMat2::new([[-1, 0], [0, -1]]));
        assert!(m.is_identity());
    }

    #[test]
    fn decomposition_examples() {
        let d = semidirect_decompose(&w("1 3'"));
        assert!(d.g_matrix.is_identity());
        assert_eq!(d.n_part, NPart::Na);
        let d = semidirect_decompose(&w("1"));
        assert_eq!(d.g_matrix.matrix, IntMat2::a());
        assert_eq!(d.n_part, NPart::One);
        let d = semidirect_decompose(&w("1 2 1 2 1 2"));
        assert!(d.g_matrix.is_identity());
        assert_eq!(d.n_part, NPart::One);
        assert_eq!(
            semidirect_decompose(&NPart::NaNb.word()).n_part,
            NPart::NaNb
        );
    }

    #[test]
    fn word_problem_examples() {
        assert!(word_problem(&w("")));
        assert!(word_problem(&w("1 2 3 1 2 3 1 2 3 1 2 3")));
        assert!(!word_problem(&w("1 3'")));
        assert!(!word_problem(&w("2 1 3' 2'")));
        assert!(word_problem(&w("1 3' 1 3'")));
    }

    #[test]
    fn presentation_passes() {
        let rep = presentation_check();
        for (name, ok) in &rep.checks {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn big_integer_fallback() {
        // A^k B^k grows entries; push well past 2^62 and come back
        let mut letters = Vec::new();
        for _ in 0..60 {
            letters.push(Letter::new(1, false));
            letters.push(Letter::new(2, true));
        }
        let word = MCGWord { letters };
        let m = sl2z_image(&word);
        assert!(m.is_big());
        assert_eq!(m.det(), BigInt::one());
        let inv = word.inverse();
        let both = MCGWord {
            letters: [word.letters.clone(), inv.letters].concat(),
        };
        let back = sl2z_image(&both);
        assert!(!back.is_big());
        assert_eq!(back, IntMat2::identity());
    }

    #[test]
    fn g_word_reconstructs() {
        for s in [
            "",
            "1",
            "2",
            "1 2",
            "1 2 1",
            "2' 1 1 2 1' 2 2 2",
            "1' 1' 2 3 2 1 3'",
        ] {
            let g = psl2z_image(&w(s));
            let gw = g_word(&g);
            assert!(gw.letters.iter().all(|l| l.index != 3));
            assert_eq!(psl2z_image(&gw), g, "{s}");
        }
    }
}
