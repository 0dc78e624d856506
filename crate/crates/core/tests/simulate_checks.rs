//! Discrete dissipation cross-checks: the simulator's face-based
//! `∇u : h''(ū)A(ū)∇u` against the model-specific closed forms.

use crossdiff_core::entropy::{potential_entropy, EntropyDensity, EntropyKind, Func1};
use crossdiff_core::models::{Family, ModelSpec};
use crossdiff_core::poly::Poly1;
use crossdiff_core::simulate::{run, InitialProfile, SimConfig, Simulator, Termination};
use crossdiff_core::Matrix;

fn cubic_model_and_density() -> (ModelSpec, EntropyDensity) {
    let model = ModelSpec::new(Family::CubicExample, 3, 0.05).unwrap();
    let linear = || Func1::Poly(Poly1::new(vec![0.0, 1.0]));
    let h = EntropyDensity::new(EntropyKind::Separable {
        parts: vec![linear(), linear(), linear()],
        star: vec![1.0, 1.0, 1.0],
    });
    (model, h)
}

/// For the cubic flux system the dissipation is close to
/// `½·Σᵢ Δx·Σ_faces ((uᵢ²)ₓ)²` — the two agree exactly for proportional
/// species profiles and within a few percent for near-proportional data.
#[test]
fn cubic_dissipation_matches_square_gradient_form() {
    let (model, h) = cubic_model_and_density();
    let cells = 128;
    let config = SimConfig {
        cells,
        length: 1.0,
        initial: InitialProfile {
            base: vec![1.0, 1.0, 1.0],
            amplitude: vec![0.2, 0.204, 0.196],
        },
        t_final: 0.004,
        safety: 0.4,
        stride: 50,
    };
    let result = run(&model, &h, &config).unwrap();
    assert_eq!(result.termination, Termination::Completed);
    assert!(result.frames.len() >= 3);

    let n = 3;
    let dx = 1.0 / cells as f64;
    for frame in &result.frames {
        let mut alt = 0.0;
        for j in 0..cells - 1 {
            for i in 0..n {
                let left = frame.state[j * n + i];
                let right = frame.state[(j + 1) * n + i];
                let grad_sq = (right * right - left * left) / dx;
                alt += 0.5 * grad_sq * grad_sq;
            }
        }
        alt *= dx;
        let d = frame.dissipation;
        assert!(
            (d - alt).abs() <= 0.05 * alt.max(1e-12),
            "t = {}: {d} vs {alt}",
            frame.t
        );
    }
}

/// For linear pressures with unit weights the face dissipation collapses to
/// `Σₖ πₖūₖ(∂ₓpₖ)²` exactly (the quadratic-form identity holds entrywise at
/// faces because the pressure Jacobian is constant).
#[test]
fn fluid_quadratic_entropy_dissipation_closed_form() {
    let a = Matrix::from_rows(2, &[2.0, 1.0, 1.0, 2.0]);
    let model = ModelSpec::new(Family::FluidLinear { a: a.clone() }, 2, 0.05).unwrap();
    let samples = model.sample_domain(10, 0.05, 0).unwrap();
    let refs: Vec<&[f64]> = samples.iter().map(|p| p.coords()).collect();
    let pi = [1.0, 1.0];
    let h = potential_entropy(&model, &pi, &[1.0, 1.0], &refs).unwrap();

    let cells = 64;
    let sim = Simulator::new(&model, &h, cells, 1.0).unwrap();
    let profile = InitialProfile {
        base: vec![1.0, 1.3],
        amplitude: vec![0.25, -0.2],
    };
    let state = sim.initial_state(&profile, 1.0).unwrap();
    let d = sim.dissipation(&state).unwrap();

    let n = 2;
    let dx = sim.dx();
    let mut alt = 0.0;
    for j in 0..cells - 1 {
        let left = &state[j * n..(j + 1) * n];
        let right = &state[(j + 1) * n..(j + 2) * n];
        let avg: Vec<f64> = (0..n).map(|i| 0.5 * (left[i] + right[i])).collect();
        let grad: Vec<f64> = (0..n).map(|i| (right[i] - left[i]) / dx).collect();
        let q = model.pressure_jacobian(&avg).unwrap();
        let qg = q.mul_vec(&grad);
        for k in 0..n {
            alt += pi[k] * avg[k] * qg[k] * qg[k];
        }
    }
    alt *= dx;
    assert!(
        (d - alt).abs() <= 1e-12 * alt.max(1.0),
        "face identity broke: {d} vs {alt}"
    );
}

/// Halving the mesh shrinks the worst entropy-balance residual.
#[test]
fn residual_shrinks_under_refinement() {
    let model = ModelSpec::new(
        Family::SktLinear {
            a0: vec![0.5, 0.5],
            a: Matrix::from_rows(2, &[1.0, 2.0, 1.0, 1.0]),
        },
        2,
        0.05,
    )
    .unwrap();
    let h = crossdiff_core::entropy::boltzmann_entropy(&[1.0, 2.0]).unwrap();
    let run_at = |cells: usize| {
        let config = SimConfig {
            cells,
            length: 1.0,
            initial: InitialProfile {
                base: vec![1.0, 1.2],
                amplitude: vec![0.3, -0.2],
            },
            t_final: 0.004,
            safety: 0.4,
            stride: 50,
        };
        let result = run(&model, &h, &config).unwrap();
        assert_eq!(result.termination, Termination::Completed);
        result.max_residual
    };
    let coarse = run_at(32);
    let fine = run_at(64);
    assert!(
        coarse / fine >= 1.5,
        "residual did not shrink: {coarse:.3e} -> {fine:.3e}"
    );
}
