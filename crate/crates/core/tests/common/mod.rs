#![allow(dead_code)] // shared across test binaries, not all use every helper

//! Seeded random-matrix generators shared by the integration tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crossdiff_core::linalg::eigenvalue_list;
use crossdiff_core::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Matrix {
    Matrix::from_fn(n, |_, _| rng.gen_range(lo..hi))
}

/// Random normally elliptic matrix: shift a random matrix right until its
/// spectrum clears zero by a random positive amount.
pub fn random_ne_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let base = random_matrix(rng, n, -1.0, 1.0);
    let eigs = eigenvalue_list(&base, 1e-12).unwrap();
    let min_re = eigs.iter().map(|l| l.re).fold(f64::INFINITY, f64::min);
    let shift = -min_re + rng.gen_range(0.2..1.0);
    let mut out = base;
    for i in 0..n {
        out[(i, i)] += shift;
    }
    out
}

/// Random symmetric positive definite matrix `MᵀM + εI`.
pub fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let m = random_matrix(rng, n, -1.0, 1.0);
    let mut out = m.transpose().matmul(&m);
    for i in 0..n {
        out[(i, i)] += 0.1;
    }
    out
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    random_matrix(rng, n, -1.0, 1.0).symmetric_part()
}

/// Random symmetric matrix whose inverse-free symmetric part entries keep G
/// well scaled for Lyapunov right-hand sides.
pub fn random_symmetric_scaled(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Matrix {
    random_matrix(rng, n, -scale, scale).symmetric_part()
}

/// Random real-diagonalizable matrix `PΛP⁻¹` with separated eigenvalues and
/// a well-conditioned basis; returns the matrix and its intended spectrum.
pub fn random_diagonalizable(rng: &mut ChaCha8Rng, n: usize, positive: bool) -> (Matrix, Vec<f64>) {
    let mut lambdas: Vec<f64> = (0..n)
        .map(|k| {
            let gap = 0.5 + rng.gen_range(0.0..0.5);
            let base = 0.3 + k as f64 * gap;
            if positive || rng.gen_bool(0.7) {
                base
            } else {
                -base
            }
        })
        .collect();
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let p = ill_free_basis(rng, n);
    let p_inv = p.inverse().unwrap();
    let a = p.matmul(&Matrix::diag(&lambdas)).matmul(&p_inv);
    (a, lambdas)
}

fn ill_free_basis(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut p = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += rng.gen_range(-0.4..0.4);
            }
        }
        if let Ok(pinv) = p.inverse() {
            if p.norm_inf() * pinv.norm_inf() < 50.0 {
                return p;
            }
        }
    }
}
