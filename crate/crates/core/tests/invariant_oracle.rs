//! The 6j pipeline against the braid action on invariant vectors of V⊗V⊗V⊗V.
//! Diagonal rescalings of either basis leave the cross-ratios
//! M[a][b] M[c][d] / (M[a][d] M[c][b]) unchanged, so those are compared.

use nalgebra::Schur;
use num_complex::Complex64;
use quantrep::braiding::{ado_rep, BraidWord, Letter};
use quantrep::cli::{random_closed_colors, random_unicolored};
use quantrep::linalg::{identity, CMatrix};
use quantrep::m04::{evaluate_word, rep_space, sigma_block, triviality_deviation, MCGWord};
use quantrep::qscalar::QParams;
use quantrep::weight_modules::{tensor_action, typical_module, Color, Generator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn null_space(m: &CMatrix, dim: usize) -> CMatrix {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.unwrap();
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let n = m.ncols();
    let mut out = CMatrix::zeros(n, dim);
    for (k, &i) in idx.iter().take(dim).enumerate() {
        for j in 0..n {
            out[(j, k)] = v_t[(i, j)].conj();
        }
    }
    out
}

fn invariants(p: &QParams, colors: [Color; 4]) -> CMatrix {
    let mods: Vec<_> = colors
        .iter()
        .map(|&c| typical_module(p, c).unwrap())
        .collect();
    let e = tensor_action(p, Generator::E, &mods).unwrap().matrix;
    let f = tensor_action(p, Generator::F, &mods).unwrap().matrix;
    let h = tensor_action(p, Generator::H, &mods).unwrap().matrix;
    let n = e.nrows();
    let mut stack = CMatrix::zeros(3 * n, n);
    stack.view_mut((0, 0), (n, n)).copy_from(&e);
    stack.view_mut((n, 0), (n, n)).copy_from(&f);
    stack.view_mut((2 * n, 0), (n, n)).copy_from(&h);
    null_space(&stack, p.r as usize)
}

fn braid(p: &QParams, colors: [Color; 4], letters: &[usize]) -> CMatrix {
    let w = BraidWord::new(4, letters.iter().map(|&i| Letter::new(i, false)).collect()).unwrap();
    ado_rep(p, &colors, &w).unwrap().matrix.matrix
}

/// Coordinates of g applied to the columns of src, expressed in dst.
fn restrict(g: &CMatrix, src: &CMatrix, dst: &CMatrix) -> CMatrix {
    let pinv = dst.clone().pseudo_inverse(1e-12).unwrap();
    pinv * g * src
}

/// Invariant basis diagonalizing the full twist on strands 1, 2.
fn twist_eigenbasis(p: &QParams, colors: [Color; 4]) -> (Vec<Complex64>, CMatrix) {
    let inv = invariants(p, colors);
    let ft = braid(p, colors, &[1, 1]);
    let m = restrict(&ft, &inv, &inv);
    let eig = Schur::new(m.clone()).eigenvalues().unwrap();
    let r = p.r as usize;
    let mut basis = CMatrix::zeros(inv.nrows(), r);
    for k in 0..r {
        let shifted = &m - identity(r) * eig[k];
        let v = null_space(&shifted, 1);
        basis.set_column(k, &(&inv * v.column(0)));
    }
    (eig.iter().copied().collect(), basis)
}

/// Reorder the twist eigenbasis to match the predicted eigenvalue ratios.
fn align(eig: &[Complex64], basis: &CMatrix, predicted: &[Complex64]) -> CMatrix {
    let r = eig.len();
    let mut best = (f64::INFINITY, Vec::new());
    let mut perm: Vec<usize> = (0..r).collect();
    permutations(&mut perm, 0, &mut |order: &[usize]| {
        let c = eig[order[0]] / predicted[0];
        let err = (0..r)
            .map(|k| (eig[order[k]] - c * predicted[k]).norm() / eig[order[k]].norm())
            .fold(0.0, f64::max);
        if err < best.0 {
            best = (err, order.to_vec());
        }
    });
    assert!(
        best.0 < 1e-8,
        "twist spectrum does not match the H-basis phases: {}",
        best.0
    );
    let mut out = CMatrix::zeros(basis.nrows(), r);
    for (k, &j) in best.1.iter().enumerate() {
        out.set_column(k, &basis.column(j));
    }
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn twist_prediction(p: &QParams, colors: [Color; 4]) -> Vec<Complex64> {
    let [l1, l2, _, _] = colors.map(|c| c.0);
    quantrep::graph_basis::admissible_betas(p, colors)
        .iter()
        .map(|&b| p.q_pow((b * b - l1 * l1 - l2 * l2) / 2.0))
        .collect()
}

fn cross_ratios(m: &CMatrix) -> Vec<Complex64> {
    let r = m.nrows();
    let mut out = Vec::new();
    for a in 0..r {
        for c in a + 1..r {
            for b in 0..r {
                for d in b + 1..r {
                    out.push(m[(a, b)] * m[(c, d)] / (m[(a, d)] * m[(c, b)]));
                }
            }
        }
    }
    out
}

fn check_sigma2(r: u32, colors: [Color; 4]) -> f64 {
    let p = QParams::new(r).unwrap();
    let target = [colors[0], colors[2], colors[1], colors[3]];
    let (e_src, b_src) = twist_eigenbasis(&p, colors);
    let (e_dst, b_dst) = twist_eigenbasis(&p, target);
    let src = align(&e_src, &b_src, &twist_prediction(&p, colors));
    let dst = align(&e_dst, &b_dst, &twist_prediction(&p, target));
    let ado = restrict(&braid(&p, colors, &[2]), &src, &dst);
    let pipe = sigma_block(&p, colors, 2, false).unwrap();
    cross_ratios(&ado)
        .iter()
        .zip(cross_ratios(&pipe))
        .map(|(x, y)| (x - y).norm() / x.norm())
        .fold(0.0, f64::max)
}

#[test]
fn sigma2_cross_ratios_match_braid_action() {
    let mut g = ChaCha8Rng::seed_from_u64(21);
    for r in [2, 3] {
        for _ in 0..10 {
            let cs = random_closed_colors(&mut g, 1.0);
            let dev = check_sigma2(r, cs);
            assert!(dev < 1e-7, "r={r} colors {cs:?}: {dev}");
        }
    }
}

#[test]
fn unicolored_cross_ratio_r2() {
    let mut g = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..5 {
        assert!(check_sigma2(2, random_unicolored(&mut g, 1.0)) < 1e-7);
    }
}

#[test]
fn invariant_space_has_dimension_r() {
    for r in [2, 3] {
        let p = QParams::new(r).unwrap();
        let mut g = ChaCha8Rng::seed_from_u64(23);
        let cs = random_closed_colors(&mut g, 1.0);
        let mods: Vec<_> = cs.iter().map(|&c| typical_module(&p, c).unwrap()).collect();
        let e = tensor_action(&p, Generator::E, &mods).unwrap().matrix;
        let f = tensor_action(&p, Generator::F, &mods).unwrap().matrix;
        let h = tensor_action(&p, Generator::H, &mods).unwrap().matrix;
        let n = e.nrows();
        let mut stack = CMatrix::zeros(3 * n, n);
        stack.view_mut((0, 0), (n, n)).copy_from(&e);
        stack.view_mut((n, 0), (n, n)).copy_from(&f);
        stack.view_mut((2 * n, 0), (n, n)).copy_from(&h);
        let mut sv: Vec<f64> = stack
            .svd(false, false)
            .singular_values
            .iter()
            .copied()
            .collect();
        sv.sort_by(f64::total_cmp);
        assert!(
            sv[r as usize - 1] < 1e-9 && sv[r as usize] > 1e-4,
            "r={r}: {sv:?}"
        );
    }
}

#[test]
fn trivial_words_are_trivial_in_the_pipeline() {
    let p = QParams::new(3).unwrap();
    let mut g = ChaCha8Rng::seed_from_u64(24);
    let space = rep_space(&p, random_closed_colors(&mut g, 1.0)).unwrap();
    let w = MCGWord::parse_compact("1 2 3 3 2 1");
    assert!(triviality_deviation(&evaluate_word(&p, &space, &w, false).unwrap()) < 1e-9);
}
