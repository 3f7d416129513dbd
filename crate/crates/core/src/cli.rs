//! Command implementations behind the `quantrep` binary.

use crate::braiding::{ado_rep, braiding_c, r_matrix, BraidWord, Letter};
use crate::error::{Error, Result};
use crate::graph_basis::{fusion_window, h_to_i_matrix, i_to_h_matrix};
use crate::groups::{presentation_check, psl2z_image, word_problem};
use crate::linalg::{
    identity, kron_all, matrix_power, max_abs, max_dev, projective_identity_dev, CMatrix,
};
use crate::m04::{
    close_colors, closed_ct, color_from_variable, conjugate_by_p, evaluate_word, qs, qt, rep_space,
    sphere_relations, triviality_deviation, unicolored, MCGWord,
};
use crate::qscalar::QParams;
use crate::weight_modules::{
    relation_defects, tensor_action, typical_module, Color, Generator, TypicalModule,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write;

pub const DEFAULT_TOL: f64 = 1e-9;
/// Random colors keep this distance from the integers, pair sums included.
pub const GENERIC_MARGIN: f64 = 1e-3;
pub const COLOR_RANGE: f64 = 2.0;

/// Parse whitespace-separated tokens `<prefix><k>` or `<prefix><k>^-1`, 1 ≤ k ≤ max.
pub fn parse_tokens(s: &str, prefix: char, max: usize) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in s.split_inclusive(char::is_whitespace) {
        let start = pos + (tok.len() - tok.trim_start().len());
        pos += tok.len();
        let t = tok.trim();
        if t.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            position: start,
            message,
        };
        let (body, inverse) = match t.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (t, false),
        };
        let digits = body
            .strip_prefix(prefix)
            .ok_or_else(|| err(format!("expected '{prefix}<k>', found '{t}'")))?;
        let k: usize = digits
            .parse()
            .map_err(|_| err(format!("bad generator index in '{t}'")))?;
        if k == 0 || k > max {
            return Err(err(format!(
                "generator '{t}' out of range {prefix}1..{prefix}{max}"
            )));
        }
        out.push(Letter::new(k, inverse));
    }
    Ok(out)
}

pub fn parse_braid_word(s: &str, strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return BraidWord::new(
            strands.max(1),
            if s.trim().is_empty() {
                vec![]
            } else {
                parse_tokens(s, 'b', 0)?
            },
        );
    }
    BraidWord::new(strands, parse_tokens(s, 'b', strands - 1)?)
}

pub fn parse_complex(s: &str) -> Result<Complex64> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|_| Error::Config(format!("cannot parse complex number '{s}'")))
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColorSpec {
    Random,
    Explicit(Vec<Complex64>),
    /// Closed-form variable A; every strand gets the color with q^λ = A.
    Unicolored(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub r: u32,
    pub colors: ColorSpec,
    pub tolerance: f64,
    pub seed: u64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r: 2,
            colors: ColorSpec::Random,
            tolerance: DEFAULT_TOL,
            seed: 0,
            samples: 50,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<QParams> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        QParams::new(self.r)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn near_integer(z: Complex64) -> bool {
    Complex64::new(z.re - z.re.round(), z.im).norm() < GENERIC_MARGIN
}

/// Whether every color and every pairwise sum stays away from the integers.
pub fn is_generic(colors: &[Color]) -> bool {
    let n = colors.len();
    (0..n).all(|i| {
        !near_integer(colors[i].0) && (i + 1..n).all(|j| !near_integer(colors[i].0 + colors[j].0))
    })
}

fn uniform_complex(rng: &mut impl Rng, range: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range))
}

/// Independent generic colors, real and imaginary parts uniform in [-range, range].
pub fn random_colors(rng: &mut impl Rng, n: usize, range: f64) -> Vec<Color> {
    loop {
        let cs: Vec<Color> = (0..n).map(|_| Color(uniform_complex(rng, range))).collect();
        if is_generic(&cs) {
            return cs;
        }
    }
}

/// Generic closed color set (λ1, λ2, λ3, -(λ1+λ2+λ3)).
pub fn random_closed_colors(rng: &mut impl Rng, range: f64) -> [Color; 4] {
    loop {
        let t = random_colors(rng, 3, range);
        let cs = close_colors([t[0], t[1], t[2]]);
        if is_generic(&cs) {
            return cs;
        }
    }
}

/// Generic unicolored set (λ, λ, λ, -3λ).
pub fn random_unicolored(rng: &mut impl Rng, range: f64) -> [Color; 4] {
    loop {
        let cs = unicolored(uniform_complex(rng, range));
        if is_generic(&cs) {
            return cs;
        }
    }
}

/// Uniform word: length uniform in 0..=max_len, letters uniform among the six generators.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> MCGWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=3), rng.gen_bool(0.5)))
        .collect();
    MCGWord { letters }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub max_dev: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, max_dev: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            pass: max_dev <= tol,
            max_dev,
        }
    }

    pub fn exact(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            max_dev: if pass { 0.0 } else { 1.0 },
        }
    }
}

#[derive(Debug, Clone, Serialize, Default, PartialEq)]
pub struct JsonReport {
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub src_perm: Vec<usize>,
    pub dst_perm: Vec<usize>,
    pub eigenvalues: Vec<[f64; 2]>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: JsonReport,
    pub ok: bool,
}

impl Report {
    fn render_checks(&mut self) {
        for c in &self.json.checks {
            let _ = writeln!(
                self.text,
                "{} {}  max_dev = {:.3e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_dev
            );
        }
        self.ok = self.json.checks.iter().all(|c| c.pass);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("report serializes")
    }
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.10e}{:+.10e}i", z.re, z.im)
}

fn matrix_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

fn write_matrix(out: &mut String, m: &CMatrix) {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt_c(m[(i, j)])).collect();
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
}

fn four_colors(p: &QParams, config: &RunConfig, rng: &mut impl Rng) -> Result<[Color; 4]> {
    match &config.colors {
        ColorSpec::Random => Ok(random_closed_colors(rng, COLOR_RANGE)),
        ColorSpec::Unicolored(a) => Ok(unicolored(color_from_variable(p, *a)?.0)),
        ColorSpec::Explicit(v) => match v.len() {
            3 => Ok(close_colors([Color(v[0]), Color(v[1]), Color(v[2])])),
            4 => Ok([Color(v[0]), Color(v[1]), Color(v[2]), Color(v[3])]),
            n => Err(Error::Config(format!(
                "expected 3 colors (λ4 is derived), got {n}"
            ))),
        },
    }
}

/// Φ(word) on the H-graph basis.
pub fn cmd_rep(config: &RunConfig, word: &str) -> Result<Report> {
    let p = config.validate()?;
    let w: MCGWord = word.parse()?;
    let mut rng = config.rng();
    let colors = four_colors(&p, config, &mut rng)?;
    let space = rep_space(&p, colors)?;
    let phi = evaluate_word(&p, &space, &w, true)?;
    let m = &phi.matrix.matrix;
    let g = psl2z_image(&w);
    let eig = g.eigenvalues();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "word: {}",
        if w.is_empty() {
            "(empty)".to_string()
        } else {
            w.to_string()
        }
    );
    let _ = writeln!(text, "r = {}", p.r);
    let cs: Vec<String> = colors.iter().map(|c| fmt_c(c.0)).collect();
    let _ = writeln!(text, "colors: {}", cs.join(", "));
    let _ = writeln!(text, "matrix:");
    write_matrix(&mut text, m);
    let _ = writeln!(text, "src_perm: {}", phi.src_perm);
    let _ = writeln!(text, "dst_perm: {}", phi.dst_perm);
    let _ = writeln!(text, "PSL(2,Z) image: {g}");
    let _ = writeln!(text, "eigenvalues: {}, {}", fmt_c(eig[0]), fmt_c(eig[1]));
    let dev = triviality_deviation(&phi);
    let trivial = word_problem(&w);
    let mut report = Report {
        text,
        json: JsonReport {
            matrix: matrix_rows(m),
            src_perm: phi.src_perm.one_based().to_vec(),
            dst_perm: phi.dst_perm.one_based().to_vec(),
            eigenvalues: eig.iter().map(|z| [z.re, z.im]).collect(),
            // informational: the report still succeeds when the word is nontrivial
            checks: vec![Check {
                name: format!(
                    "projectively trivial: {} (oracle: {})",
                    dev <= config.tolerance,
                    trivial
                ),
                pass: (dev <= config.tolerance) == trivial,
                max_dev: dev,
            }],
        },
        ok: true,
    };
    report.render_checks();
    Ok(report)
}

/// ADO representation of a braid word on n strands.
pub fn cmd_braid(config: &RunConfig, n: usize, word: &str) -> Result<Report> {
    let p = config.validate()?;
    let w = parse_braid_word(word, n)?;
    let mut rng = config.rng();
    let colors: Vec<Color> = match &config.colors {
        ColorSpec::Random => random_colors(&mut rng, n, COLOR_RANGE),
        ColorSpec::Unicolored(a) => vec![color_from_variable(&p, *a)?; n],
        ColorSpec::Explicit(v) if v.len() == n => v.iter().map(|&z| Color(z)).collect(),
        ColorSpec::Explicit(v) => {
            return Err(Error::Config(format!(
                "{} colors given for {n} strands",
                v.len()
            )))
        }
    };
    let rep = ado_rep(&p, &colors, &w)?;
    let m = &rep.matrix.matrix;
    let mut text = String::new();
    let _ = writeln!(text, "braid on {n} strands, r = {}", p.r);
    let cs: Vec<String> = colors.iter().map(|c| fmt_c(c.0)).collect();
    let _ = writeln!(text, "colors: {}", cs.join(", "));
    let _ = writeln!(text, "matrix ({}x{}):", m.nrows(), m.ncols());
    write_matrix(&mut text, m);
    let perm: Vec<usize> = rep.permutation.iter().map(|k| k + 1).collect();
    let _ = writeln!(text, "strand permutation: {perm:?}");
    Ok(Report {
        text,
        json: JsonReport {
            matrix: matrix_rows(m),
            src_perm: (1..=n).collect(),
            dst_perm: perm,
            eigenvalues: vec![],
            checks: vec![],
        },
        ok: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Psl2z,
    YangBaxter,
    Algebra,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relations" => Ok(Suite::Relations),
            "psl2z" => Ok(Suite::Psl2z),
            "yangbaxter" => Ok(Suite::YangBaxter),
            "algebra" => Ok(Suite::Algebra),
            _ => Err(Error::Config(format!("unknown suite '{s}'"))),
        }
    }
}

/// Worst deviation per named check over a set of samples.
struct Worst(Vec<(String, f64)>);

impl Worst {
    fn new() -> Self {
        Worst(Vec::new())
    }

    fn add(&mut self, name: &str, dev: f64) {
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        match self.0.iter_mut().find(|(n, _)| n == name) {
            Some(e) => e.1 = e.1.max(dev),
            None => self.0.push((name.to_string(), dev)),
        }
    }

    fn checks(self, tol: f64) -> Vec<Check> {
        self.0
            .into_iter()
            .map(|(n, d)| Check::new(n, d, tol))
            .collect()
    }
}

/// Relations of M(0,4) on `samples` closed color sets.
pub fn relation_checks(p: &QParams, colors: &[[Color; 4]], tol: f64) -> Result<Vec<Check>> {
    let mut worst = Worst::new();
    for &cs in colors {
        let space = rep_space(p, cs)?;
        for (name, lhs, rhs) in sphere_relations() {
            let a = evaluate_word(p, &space, &lhs, true)?;
            let b = evaluate_word(p, &space, &rhs, true)?;
            worst.add(name, crate::m04::projective_deviation(&a, &b));
        }
    }
    Ok(worst.checks(tol))
}

/// QS/QT/P chain for the given parameters A.
pub fn psl_chain_checks(values: &[Complex64], tol: f64) -> Result<Vec<Check>> {
    let mut worst = Worst::new();
    let minus = -identity(2);
    let one = Complex64::new(1.0, 0.0);
    let t_std = CMatrix::from_row_slice(2, 2, &[Complex64::ZERO, one, -one, Complex64::ZERO]);
    for &a in values {
        let s = qs(a)?;
        let t = qt(a)?;
        worst.add("QS^3 = -Id", max_dev(&matrix_power(&s, 3), &minus));
        worst.add("QT^2 = -Id", max_dev(&matrix_power(&t, 2), &minus));
        let cs = conjugate_by_p(a, &s)?;
        let ct = conjugate_by_p(a, &t)?;
        worst.add("P^-1 QT P = [[0,1],[-1,0]]", max_dev(&ct, &t_std));
        worst.add("P^-1 QS P = [[0,1/A],[-A,1]]", max_dev(&cs, &closed_ct(a)));
        worst.add(
            "(P^-1 QT P)^2 = 1 projectively",
            projective_identity_dev(&matrix_power(&ct, 2)),
        );
        worst.add(
            "(P^-1 QS P)^3 = 1 projectively",
            projective_identity_dev(&matrix_power(&cs, 3)),
        );
    }
    Ok(worst.checks(tol))
}

/// Intertwining and Yang-Baxter for triples of colors.
pub fn yang_baxter_checks(p: &QParams, triples: &[[Color; 3]], tol: f64) -> Result<Vec<Check>> {
    let r = p.r as usize;
    let id = identity(r);
    let mut worst = Worst::new();
    for &[l, m, n] in triples {
        let c = |x: Color, y: Color| braiding_c(p, x, y).map(|b| b.matrix);
        // (c_{m,n} ⊗ 1)(1 ⊗ c_{l,n})(c_{l,m} ⊗ 1) = (1 ⊗ c_{l,m})(c_{l,n} ⊗ 1)(1 ⊗ c_{m,n})
        let lhs =
            kron_all(&[&c(m, n)?, &id]) * kron_all(&[&id, &c(l, n)?]) * kron_all(&[&c(l, m)?, &id]);
        let rhs =
            kron_all(&[&id, &c(l, m)?]) * kron_all(&[&c(l, n)?, &id]) * kron_all(&[&id, &c(m, n)?]);
        worst.add("Yang-Baxter", max_dev(&lhs, &rhs) / max_abs(&lhs));
        let vl = typical_module(p, l)?;
        let vm = typical_module(p, m)?;
        let clm = c(l, m)?;
        let scale = max_abs(&clm);
        for g in [Generator::E, Generator::F, Generator::K, Generator::H] {
            let a = tensor_action(p, g, &[vl.clone(), vm.clone()])?.matrix;
            let b = tensor_action(p, g, &[vm.clone(), vl.clone()])?.matrix;
            let dev = max_dev(&(&clm * a), &(b * &clm))
                / (scale
                    * max_abs(&tensor_action(p, g, &[vl.clone(), vm.clone()])?.matrix).max(1.0));
            worst.add(&format!("c intertwines {g:?}"), dev);
        }
        let rm = r_matrix(p, l, m)?.matrix;
        let h = tensor_action(p, Generator::H, &[vl.clone(), vm.clone()])?.matrix;
        worst.add(
            "R preserves weight",
            max_dev(&(&rm * &h), &(&h * &rm)) / max_abs(&rm),
        );
    }
    Ok(worst.checks(tol))
}

/// Algebra relations on single modules and on pairs.
pub fn algebra_checks(p: &QParams, colors: &[Color], tol: f64) -> Result<Vec<Check>> {
    let mut worst = Worst::new();
    let r = p.r as usize;
    let mods: Vec<TypicalModule> = colors
        .iter()
        .map(|&c| typical_module(p, c))
        .collect::<Result<_>>()?;
    for v in &mods {
        for (name, dev) in relation_defects(p, &v.h, &v.e, &v.f, &v.k)? {
            worst.add(name, dev);
        }
        worst.add("E^r = 0", max_abs(&matrix_power(&v.e, r)));
        worst.add("F^r = 0", max_abs(&matrix_power(&v.f, r)));
    }
    for pair in mods.chunks(2).filter(|c| c.len() == 2) {
        let g = |x| tensor_action(p, x, pair).map(|m| m.matrix);
        for (name, dev) in relation_defects(
            p,
            &g(Generator::H)?,
            &g(Generator::E)?,
            &g(Generator::F)?,
            &g(Generator::K)?,
        )? {
            worst.add(&format!("tensor: {name}"), dev);
        }
    }
    Ok(worst.checks(tol))
}

/// Basis roundtrip H -> I -> H.
pub fn roundtrip_checks(p: &QParams, colors: &[[Color; 4]], tol: f64) -> Result<Vec<Check>> {
    let mut worst = Worst::new();
    let n = fusion_window(p).values.len();
    for &cs in colors {
        let back = i_to_h_matrix(p, cs)?.compose(&h_to_i_matrix(p, cs)?);
        worst.add("H -> I -> H = Id", max_dev(&back.matrix, &identity(n)));
    }
    Ok(worst.checks(tol))
}

pub fn cmd_verify(config: &RunConfig, suite: Suite) -> Result<Report> {
    let p = config.validate()?;
    let mut rng = config.rng();
    let tol = config.tolerance;
    let checks = match suite {
        Suite::Relations => {
            let sets: Vec<[Color; 4]> = match &config.colors {
                ColorSpec::Random => (0..config.samples)
                    .map(|_| random_closed_colors(&mut rng, COLOR_RANGE))
                    .collect(),
                _ => vec![four_colors(&p, config, &mut rng)?],
            };
            relation_checks(&p, &sets, tol)?
        }
        Suite::Psl2z => {
            let mut checks: Vec<Check> = presentation_check()
                .checks
                .into_iter()
                .map(|(n, ok)| Check::exact(n, ok))
                .collect();
            let values = match &config.colors {
                ColorSpec::Unicolored(a) => vec![*a],
                _ => (0..config.samples)
                    .map(|_| random_parameter(&mut rng))
                    .collect(),
            };
            checks.extend(psl_chain_checks(&values, tol)?);
            checks
        }
        Suite::YangBaxter => {
            let triples: Vec<[Color; 3]> = (0..config.samples)
                .map(|_| {
                    let c = random_colors(&mut rng, 3, COLOR_RANGE);
                    [c[0], c[1], c[2]]
                })
                .collect();
            yang_baxter_checks(&p, &triples, tol)?
        }
        Suite::Algebra => {
            let colors = random_colors(&mut rng, 2 * config.samples, COLOR_RANGE);
            algebra_checks(&p, &colors, tol)?
        }
    };
    let mut report = Report {
        text: format!("suite {suite:?}, r = {}, tol = {:e}\n", p.r, tol),
        json: JsonReport {
            checks,
            ..Default::default()
        },
        ok: false,
    };
    report.render_checks();
    Ok(report)
}

/// A with |A| in [0.5, 2], |A² - 1| > 1e-3.
pub fn random_parameter(rng: &mut impl Rng) -> Complex64 {
    loop {
        let modulus = rng.gen_range(0.5..=2.0);
        let arg = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let a = Complex64::from_polar(modulus, arg);
        if (a * a - 1.0).norm() > 1e-3 {
            return a;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzOutcome {
    pub word: MCGWord,
    pub oracle_trivial: bool,
    pub phi_trivial: bool,
    pub deviation: f64,
}

/// Compare the projective triviality of Φ(w) with the exact oracle on each word.
pub fn fuzz_words(
    p: &QParams,
    colors: [Color; 4],
    words: &[MCGWord],
    tol: f64,
) -> Result<Vec<FuzzOutcome>> {
    let space = rep_space(p, colors)?;
    words
        .par_iter()
        .map(|w| {
            let phi = evaluate_word(p, &space, w, true)?;
            let deviation = triviality_deviation(&phi);
            Ok(FuzzOutcome {
                word: w.clone(),
                oracle_trivial: word_problem(w),
                phi_trivial: deviation <= tol,
                deviation,
            })
        })
        .collect()
}

pub fn cmd_fuzz(config: &RunConfig, max_len: usize) -> Result<Report> {
    let p = config.validate()?;
    if max_len == 0 {
        return Err(Error::Config("max_len must be at least 1".into()));
    }
    let mut rng = config.rng();
    let colors = match &config.colors {
        ColorSpec::Random => random_unicolored(&mut rng, COLOR_RANGE),
        _ => four_colors(&p, config, &mut rng)?,
    };
    let words: Vec<MCGWord> = (0..config.samples)
        .map(|_| random_word(&mut rng, max_len))
        .collect();
    let outcomes = fuzz_words(&p, colors, &words, config.tolerance)?;
    let mismatches: Vec<&FuzzOutcome> = outcomes
        .iter()
        .filter(|o| o.oracle_trivial != o.phi_trivial)
        .collect();
    let trivial = outcomes.iter().filter(|o| o.oracle_trivial).count();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "fuzz: {} words, max length {max_len}, r = {}",
        words.len(),
        p.r
    );
    let _ = writeln!(
        text,
        "color: {}  A = {}",
        fmt_c(colors[0].0),
        fmt_c(p.q_pow(colors[0].0))
    );
    let _ = writeln!(text, "trivial by oracle: {trivial}");
    for m in &mismatches {
        let _ = writeln!(
            text,
            "MISMATCH word '{}': oracle trivial = {}, phi trivial = {}, deviation = {:.3e}",
            m.word, m.oracle_trivial, m.phi_trivial, m.deviation
        );
    }
    let finite_max = outcomes
        .iter()
        .filter(|o| o.oracle_trivial)
        .map(|o| o.deviation)
        .fold(0.0, f64::max);
    let mut report = Report {
        text,
        json: JsonReport {
            checks: vec![
                Check::new(
                    "oracle agreement (mismatch count)",
                    mismatches.len() as f64,
                    0.0,
                ),
                Check::new(
                    "trivial words: max projective deviation",
                    finite_max,
                    config.tolerance,
                ),
            ],
            ..Default::default()
        },
        ok: false,
    };
    report.render_checks();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::perm_of_word;

    #[test]
    fn tokens() {
        let l = parse_tokens("s1 s3^-1\ts2", 's', 3).unwrap();
        assert_eq!(
            l,
            vec![
                Letter::new(1, false),
                Letter::new(3, true),
                Letter::new(2, false)
            ]
        );
        assert!(parse_tokens("", 's', 3).unwrap().is_empty());
        match parse_tokens("s1  s4", 's', 3) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_tokens("s1 x2", 's', 3) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_tokens("s1^2", 's', 3).is_err());
        assert_eq!(parse_braid_word("b1 b2^-1", 3).unwrap().letters.len(), 2);
        assert!(parse_braid_word("b3", 3).is_err());
    }

    #[test]
    fn complex_lists() {
        let v = parse_complex_list("0.3+0.2i,-0.1,2i").unwrap();
        assert_eq!(
            v,
            vec![
                Complex64::new(0.3, 0.2),
                Complex64::new(-0.1, 0.0),
                Complex64::new(0.0, 2.0)
            ]
        );
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn sampler_is_generic_and_seeded() {
        let cfg = RunConfig {
            seed: 7,
            ..Default::default()
        };
        let a = random_closed_colors(&mut cfg.rng(), COLOR_RANGE);
        let b = random_closed_colors(&mut cfg.rng(), COLOR_RANGE);
        assert_eq!(a, b);
        assert!(is_generic(&a));
        assert!(!is_generic(&[Color::new(0.5, 0.0), Color::new(0.5, 0.0)]));
    }

    #[test]
    fn rep_reports() {
        let cfg = RunConfig {
            colors: ColorSpec::Unicolored(Complex64::new(0.9, 0.7)),
            ..Default::default()
        };
        let r = cmd_rep(&cfg, "s1 s2").unwrap();
        assert!(r.ok);
        assert_eq!(r.json.matrix.len(), 2);
        assert_eq!(r.json.dst_perm, vec![2, 3, 1, 4]);
        let e = cmd_rep(&cfg, "").unwrap();
        assert_eq!(e.json.dst_perm, vec![1, 2, 3, 4]);
        assert!(e.json.checks[0].max_dev < 1e-15);
        assert!(matches!(cmd_rep(&cfg, "s4"), Err(Error::Parse { .. })));
    }

    #[test]
    fn braid_reports() {
        let cfg = RunConfig {
            colors: ColorSpec::Explicit(vec![Complex64::new(0.2, 0.3), Complex64::new(-0.4, 0.1)]),
            ..Default::default()
        };
        let id = cmd_braid(&cfg, 2, "b1 b1^-1").unwrap();
        for (i, row) in id.json.matrix.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((z[0] - expect).abs() < 1e-12 && z[1].abs() < 1e-12);
            }
        }
        let cfg3 = RunConfig {
            seed: 3,
            r: 3,
            ..Default::default()
        };
        let a = cmd_braid(&cfg3, 3, "b1 b2 b1").unwrap();
        let b = cmd_braid(&cfg3, 3, "b2 b1 b2").unwrap();
        let dev = a
            .json
            .matrix
            .iter()
            .flatten()
            .zip(b.json.matrix.iter().flatten())
            .map(|(x, y)| ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt())
            .fold(0.0, f64::max);
        let scale = a
            .json
            .matrix
            .iter()
            .flatten()
            .map(|x| x[0].hypot(x[1]))
            .fold(0.0, f64::max);
        assert!(dev / scale < 1e-9);
    }

    #[test]
    fn verify_suites_pass() {
        let cfg = RunConfig {
            samples: 10,
            ..Default::default()
        };
        assert!(cmd_verify(&cfg, Suite::Relations).unwrap().ok);
        assert!(cmd_verify(&cfg, Suite::Psl2z).unwrap().ok);
        let cfg3 = RunConfig {
            r: 3,
            samples: 10,
            ..Default::default()
        };
        assert!(cmd_verify(&cfg3, Suite::YangBaxter).unwrap().ok);
        let alg = RunConfig {
            tolerance: 1e-10,
            ..cfg3
        };
        assert!(cmd_verify(&alg, Suite::Algebra).unwrap().ok);
    }

    #[test]
    fn fuzz_is_deterministic() {
        let cfg = RunConfig {
            samples: 200,
            seed: 11,
            tolerance: 1e-7,
            ..Default::default()
        };
        let a = cmd_fuzz(&cfg, 12).unwrap();
        let b = cmd_fuzz(&cfg, 12).unwrap();
        assert_eq!(a.text, b.text);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.ok, "{}", a.text);
    }

    #[test]
    fn fuzz_planted_words() {
        let p = QParams::new(2).unwrap();
        let cs = random_unicolored(&mut RunConfig::default().rng(), COLOR_RANGE);
        let words = vec![
            MCGWord::parse_compact("1 2 3").pow(4),
            MCGWord::parse_compact("1 3'"),
            MCGWord::parse_compact("2 1 3' 2'"),
        ];
        let out = fuzz_words(&p, cs, &words, 1e-7).unwrap();
        assert!(out[0].oracle_trivial && out[0].phi_trivial);
        assert!(!out[1].oracle_trivial && !out[1].phi_trivial);
        assert!(!out[2].oracle_trivial && !out[2].phi_trivial);
        assert!(perm_of_word(&words[0]).is_identity());
    }
}
