mod common;

use rand::Rng;

use crossdiff_core::ellipticity::leading_minors_positive;
use crossdiff_core::entropy::{
    boltzmann_entropy, keller_segel_entropy, potential_entropy, quadratic_entropy_from_lyapunov,
    separable_entropy_2species, solve_detailed_balance_constant, verify_entropy_structure,
    volume_filling_entropy, EntropyDensity, VerifyConfig,
};
use crossdiff_core::models::{Family, ModelSpec};
use crossdiff_core::poly::Poly1;
use crossdiff_core::{Matrix, Verdict};

fn default_samples(
    model: &ModelSpec,
    count: usize,
    seed: u64,
) -> Vec<crossdiff_core::models::DomainPoint> {
    model.sample_domain(count, 0.05, seed).unwrap()
}

/// Random population coefficients satisfying detailed balance by
/// construction: a = diag(π)⁻¹·S for a symmetric positive S.
fn random_db_population(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> (ModelSpec, Vec<f64>) {
    let pi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
    let s = Matrix::from_fn(n, |i, j| if i <= j { rng.gen_range(0.1..1.0) } else { 0.0 });
    let s = s.add(&s.transpose());
    let a = Matrix::from_fn(n, |i, j| s[(i, j)] / pi[i]);
    let a0: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let model = ModelSpec::new(Family::SktLinear { a0, a }, n, 0.05).unwrap();
    (model, pi)
}

/// Entropy structure implies normal ellipticity at every sample, and with a
/// symmetric `h''A` the "symmetric + elliptic but not definite" conflict
/// flag never raises (500 randomized detailed-balance population models).
#[test]
fn detailed_balance_population_models_verify() {
    let mut rng = common::rng(31);
    for trial in 0..500 {
        let n = 2 + trial % 3;
        let (model, _expected_pi) = random_db_population(&mut rng, n);
        let Family::SktLinear { a, .. } = model.family() else {
            unreachable!()
        };
        let db = solve_detailed_balance_constant(a);
        assert!(db.feasible, "trial {trial}: construction should balance");
        let h = boltzmann_entropy(&db.pi).unwrap();
        let samples = default_samples(&model, 10, trial as u64);
        let report =
            verify_entropy_structure(&model, &h, &samples, &VerifyConfig::default()).unwrap();
        assert!(report.symmetric, "trial {trial}");
        for rec in &report.samples {
            assert!(rec.sym_defect <= 1e-10, "trial {trial}");
            // Definiteness of h''A forces ellipticity of A, and for
            // symmetric h''A the converse holds as well.
            if rec.pd == Verdict::Pass {
                assert_eq!(rec.ne, Verdict::Pass, "trial {trial}");
            }
        }
        assert!(!report.sym_ne_without_pd, "trial {trial}");
        assert!(report.entropy_structure_found(), "trial {trial}");
        // Symmetric h''A with entropy structure: real positive spectrum.
        assert!(report.diagonalizable, "trial {trial}");
    }
}

/// For separable densities with symmetric `h''A`, positive definiteness at a
/// sample is equivalent to positive leading principal minors of `A(u)`.
#[test]
fn minor_criterion_matches_definiteness() {
    let mut rng = common::rng(32);
    let mut checked = 0;
    for trial in 0..60 {
        let n = 2 + trial % 3;
        let (model, _) = random_db_population(&mut rng, n);
        let Family::SktLinear { a, .. } = model.family() else {
            unreachable!()
        };
        let db = solve_detailed_balance_constant(a);
        let h = boltzmann_entropy(&db.pi).unwrap();
        let samples = default_samples(&model, 10, 1000 + trial as u64);
        let report =
            verify_entropy_structure(&model, &h, &samples, &VerifyConfig::default()).unwrap();
        for rec in &report.samples {
            if !rec.symmetric || rec.pd_margin.abs() < 1e-6 {
                continue;
            }
            let a_at = model.diffusion_matrix(&rec.u).unwrap();
            let minors = leading_minors_positive(&a_at, 1e-12);
            checked += 1;
            assert_eq!(
                rec.pd == Verdict::Pass,
                minors == Verdict::Pass,
                "trial {trial} at {:?}",
                rec.u
            );
        }
    }
    assert!(checked >= 500, "only {checked} samples exercised");
}

/// Q-weighted dissipation identity for fluid models:
/// `zᵀh''(u)A(u)z = Σₖ πₖuₖ(Σⱼ ∂pₖ/∂uⱼ·zⱼ)²`.
#[test]
fn fluid_dissipation_identity() {
    let mut rng = common::rng(33);
    let a = Matrix::from_rows(2, &[2.0, 1.0, 1.0, 2.0]);
    let model = ModelSpec::new(Family::FluidLinear { a: a.clone() }, 2, 0.05).unwrap();
    let samples = default_samples(&model, 10, 3);
    let refs: Vec<&[f64]> = samples.iter().map(|p| p.coords()).collect();
    let pi = [1.0, 1.0];
    let h = potential_entropy(&model, &pi, &[1.0, 1.0], &refs).unwrap();
    for trial in 0..100 {
        let u = [rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0)];
        let z = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let hess = h.hessian(&u).unwrap();
        let a_u = model.diffusion_matrix(&u).unwrap();
        let m = hess.matmul(&a_u);
        let mz = m.mul_vec(&z);
        let lhs: f64 = z.iter().zip(mz.iter()).map(|(x, y)| x * y).sum();
        let q = model.pressure_jacobian(&u).unwrap();
        let qz = q.mul_vec(&z);
        let rhs: f64 = (0..2).map(|k| pi[k] * u[k] * qz[k] * qz[k]).sum();
        assert!(
            (lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()),
            "trial {trial}: {lhs} vs {rhs}"
        );
    }
}

/// Generalized population split: with feasible balance and elliptic pressure
/// Jacobian, `h''A = diag(πᵢpᵢ/uᵢ) + (πᵢ∂pᵢ/∂uⱼ)` with both parts spd.
#[test]
fn population_pressure_split() {
    // Balanced (π = (1,2)) with det a > 0, so the pressure Jacobian is
    // normally elliptic as the hypothesis requires.
    let a = Matrix::from_rows(2, &[2.0, 2.0, 1.0, 2.0]);
    let model = ModelSpec::new(
        Family::SktLinear {
            a0: vec![0.5, 0.5],
            a: a.clone(),
        },
        2,
        0.05,
    )
    .unwrap();
    let db = solve_detailed_balance_constant(&a);
    assert!(db.feasible);
    let pi = db.pi;
    let h = boltzmann_entropy(&pi).unwrap();
    for point in default_samples(&model, 30, 5) {
        let u = point.coords();
        let hess = h.hessian(u).unwrap();
        let a_u = model.diffusion_matrix(u).unwrap();
        let m = hess.matmul(&a_u);
        let p = model.pressure_values(u).unwrap();
        let q = model.pressure_jacobian(u).unwrap();
        let diag = Matrix::diag(&(0..2).map(|i| pi[i] * p[i] / u[i]).collect::<Vec<_>>());
        let weighted_q = Matrix::from_fn(2, |i, j| pi[i] * q[(i, j)]);
        assert!(m.sub(&diag.add(&weighted_q)).norm_inf() < 1e-12 * m.norm_inf());
        assert!(crossdiff_core::linalg::is_positive_definite(&diag, 1e-12).0);
        assert!(crossdiff_core::linalg::is_positive_definite(&weighted_q, 1e-12).0);
    }
}

/// Every density kind passes finite-difference consistency of gradient and
/// Hessian at sampled interior points.
#[test]
fn gradient_and_hessian_consistency_all_kinds() {
    let orthant_model = ModelSpec::new(
        Family::FluidLinear {
            a: Matrix::from_rows(2, &[2.0, 1.0, 1.0, 2.0]),
        },
        2,
        0.05,
    )
    .unwrap();
    let simplex_model = ModelSpec::new(
        Family::VolumeFillingChi {
            gamma: 1.5,
            c: Matrix::from_rows(2, &[0.5, 0.2, 0.2, 0.5]),
        },
        2,
        0.05,
    )
    .unwrap();
    let orthant_pts = default_samples(&orthant_model, 50, 9);
    let simplex_pts = default_samples(&simplex_model, 50, 9);
    let orthant_refs: Vec<&[f64]> = orthant_pts.iter().map(|p| p.coords()).collect();

    let one = Poly1::constant(1.0);
    let b1 = Poly1::new(vec![0.0, 1.0]);
    let densities: Vec<(EntropyDensity, bool)> = vec![
        (boltzmann_entropy(&[1.0, 2.0]).unwrap(), false),
        (
            quadratic_entropy_from_lyapunov(&Matrix::from_rows(2, &[1.0, 2.0, 0.0, 2.0])).unwrap(),
            false,
        ),
        (volume_filling_entropy(&simplex_model).unwrap(), true),
        (
            potential_entropy(&orthant_model, &[1.0, 1.0], &[1.0, 1.0], &orthant_refs).unwrap(),
            false,
        ),
        (
            separable_entropy_2species(&b1, &one, &one, &one, (0.04, 3.1), (1.0, 1.0)).unwrap(),
            false,
        ),
        (keller_segel_entropy(0.5).unwrap(), false),
    ];

    for (idx, (h, on_simplex)) in densities.iter().enumerate() {
        let pts = if *on_simplex {
            &simplex_pts
        } else {
            &orthant_pts
        };
        for point in pts.iter() {
            let u = point.coords();
            let step = 1e-6;
            let grad = h.gradient(u).unwrap();
            let hess = h.hessian(u).unwrap();
            for j in 0..2 {
                let mut up = u.to_vec();
                let mut dn = u.to_vec();
                up[j] += step;
                dn[j] -= step;
                let fd_g = (h.value(&up).unwrap() - h.value(&dn).unwrap()) / (2.0 * step);
                assert!(
                    (grad[j] - fd_g).abs() <= 1e-6 * (1.0 + fd_g.abs()),
                    "density {idx} grad[{j}] at {u:?}: {} vs {fd_g}",
                    grad[j]
                );
                let gu = h.gradient(&up).unwrap();
                let gd = h.gradient(&dn).unwrap();
                for i in 0..2 {
                    let fd_h = (gu[i] - gd[i]) / (2.0 * step);
                    assert!(
                        (hess[(i, j)] - fd_h).abs() <= 1e-6 * (1.0 + fd_h.abs()),
                        "density {idx} hess[({i},{j})] at {u:?}"
                    );
                }
            }
        }
    }
}
