mod common;

use crossdiff_core::linalg::is_positive_definite;
use crossdiff_core::lyapunov::{det_identity_gap, lyapunov_integral_oracle_auto, solve_lyapunov};
use crossdiff_core::Matrix;

fn residual_norm(a: &Matrix, h: &Matrix, g: &Matrix) -> f64 {
    h.matmul(a).add(&a.transpose().matmul(h)).sub(g).norm_inf()
}

/// Residual and symmetry of the solve on random normally elliptic matrices
/// with random symmetric right-hand sides.
#[test]
fn residual_and_symmetry_on_random_inputs() {
    let mut rng = common::rng(41);
    for trial in 0..200 {
        let n = 2 + trial % 5; // up to 6
        let a = common::random_ne_matrix(&mut rng, n);
        let g = common::random_symmetric_scaled(&mut rng, n, 2.0);
        let h = solve_lyapunov(&a, &g).unwrap();
        let scale = a.norm_inf() * h.norm_inf() + g.norm_inf();
        assert!(
            residual_norm(&a, &h, &g) <= 1e-9 * scale,
            "trial {trial}: residual too large"
        );
        assert!(
            h.symmetry_defect() <= 1e-9 * h.norm_inf().max(1e-30),
            "trial {trial}: H not symmetric"
        );
    }
}

/// For G = I the solution must be symmetric positive definite.
#[test]
fn identity_rhs_gives_spd_solution() {
    let mut rng = common::rng(42);
    for trial in 0..100 {
        let n = 2 + trial % 5;
        let a = common::random_ne_matrix(&mut rng, n);
        let h = solve_lyapunov(&a, &Matrix::identity(n)).unwrap();
        let (pd, margin) = is_positive_definite(&h, 1e-12);
        assert!(pd, "trial {trial}: margin {margin}");
    }
}

/// The quadrature oracle agrees with the direct solve on random normally
/// elliptic fixtures.
#[test]
fn oracle_agrees_with_solver() {
    let mut rng = common::rng(43);
    for trial in 0..20 {
        let n = 2 + trial % 3; // up to 4
        let a = common::random_ne_matrix(&mut rng, n);
        let direct = solve_lyapunov(&a, &Matrix::identity(n)).unwrap();
        let oracle = lyapunov_integral_oracle_auto(&a).unwrap();
        let gap = direct.sub(&oracle).norm_inf();
        assert!(gap <= 1e-6, "trial {trial}: solver/oracle gap {gap:.3e}");
    }
}

/// The largest supported dimension works end to end: a 16×16 solve means a
/// 256-unknown Kronecker system.
#[test]
fn max_dimension_solve_and_factorization() {
    use crossdiff_core::factorize::pd_factorize;
    let n = 16;
    let mut a = Matrix::from_fn(n, |i, j| ((i * 31 + j * 17 + 3) as f64).sin() * 0.3);
    for i in 0..n {
        a[(i, i)] += 3.0;
    }
    let h = solve_lyapunov(&a, &Matrix::identity(n)).unwrap();
    assert!(residual_norm(&a, &h, &Matrix::identity(n)) < 1e-10 * a.norm_inf() * h.norm_inf());
    assert!(is_positive_definite(&h, 1e-12).0);
    let f = pd_factorize(&a).unwrap();
    assert!(f.residual < 1e-9 * a.norm_inf());
}

/// The tempting determinant shortcut `det H = 1/(2·tr A)` does not hold;
/// tabulate both sides rather than asserting them equal.
#[test]
fn determinant_shortcut_fails_in_general() {
    let mut rng = common::rng(44);
    let mut worst_gap = 0.0_f64;
    println!("det H vs 1/(2 tr A)");
    for trial in 0..20 {
        let n = 2 + trial % 3;
        let a = common::random_ne_matrix(&mut rng, n);
        let gap = det_identity_gap(&a).unwrap();
        println!(
            "  n={n}  det_h={:+.6e}  half_inv_trace={:+.6e}",
            gap.det_h, gap.half_inv_trace
        );
        worst_gap = worst_gap.max((gap.det_h - gap.half_inv_trace).abs());
    }
    // The reference matrix gives 13/72 against 1/6.
    let reference = det_identity_gap(&Matrix::from_rows(2, &[1.0, 2.0, 0.0, 2.0])).unwrap();
    assert!((reference.det_h - 13.0 / 72.0).abs() < 1e-12);
    assert!((reference.half_inv_trace - 1.0 / 6.0).abs() < 1e-15);
    assert!(
        worst_gap > 1e-6,
        "the shortcut held on every fixture, which would be a fluke"
    );
}
