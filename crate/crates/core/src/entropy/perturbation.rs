use crate::ellipticity::ne_tol;
use crate::linalg::{eigenvalues, is_positive_definite, symmetric_eigenvalues, Matrix};
use crate::lyapunov::solve_lyapunov;

use super::EntropyError;

/// Matrices entering the perturbation bound at one sample: the diffusion
/// matrix `A(u)`, the entropy Hessian `h''(u)`, and the decomposition
/// `h''A = S + εN` with `S` symmetric.
#[derive(Debug, Clone)]
pub struct PerturbationSample {
    pub a: Matrix,
    pub hess: Matrix,
    pub s: Matrix,
    pub n: Matrix,
}

/// Admissible perturbation size `ε₀ = min(ε₁, ε₂)` for a symmetric-plus-
/// perturbation decomposition `h''A = S + εN` over a sample set.
///
/// `ε₁ = λ*/(2C₁)` keeps the spectrum of `h''⁻¹S` in the right half plane
/// (eigenvalue perturbation bound with `C₁ = sup cond∞(A)·‖h''⁻¹N‖∞`), and
/// `ε₂ = κ/K` keeps the quadratic form positive (`κ = inf λmin(S)`,
/// `K = sup ‖N‖∞`). Returns `+∞` when `N` vanishes everywhere.
pub fn perturbation_bound_symmetric(samples: &[PerturbationSample]) -> Result<f64, EntropyError> {
    if samples.is_empty() {
        return Err(EntropyError::NoBoundAvailable);
    }

    let mut lambda_star = f64::INFINITY;
    let mut c1 = 0.0_f64;
    let mut kappa = f64::INFINITY;
    let mut k_sup = 0.0_f64;

    for sample in samples {
        let tol = ne_tol(&sample.a);
        if sample.s.symmetry_defect() > 1e-9 * sample.s.norm_inf().max(1.0) {
            return Err(EntropyError::ContractViolation(
                alloc::string::String::from("S must be symmetric at every sample"),
            ));
        }
        let spectrum = eigenvalues(&sample.a, tol)?;
        lambda_star = lambda_star.min(spectrum.min_real_part);

        let a_inv = sample.a.inverse()?;
        let h_inv = sample.hess.inverse()?;
        let cond_a = sample.a.norm_inf() * a_inv.norm_inf();
        c1 = c1.max(cond_a * h_inv.matmul(&sample.n).norm_inf());

        kappa = kappa.min(symmetric_eigenvalues(&sample.s)[0]);
        k_sup = k_sup.max(sample.n.norm_inf());
    }

    let tol = 1e-12;
    if lambda_star <= tol || kappa <= tol {
        return Err(EntropyError::NoBoundAvailable);
    }
    if k_sup == 0.0 {
        return Ok(f64::INFINITY);
    }
    let eps1 = if c1 > 0.0 {
        lambda_star / (2.0 * c1)
    } else {
        f64::INFINITY
    };
    let eps2 = kappa / k_sup;
    Ok(eps1.min(eps2))
}

/// Admissible perturbation size for a constant normally elliptic base
/// matrix: with `H` solving `HA₀ + A₀ᵀH = I`, `HA₀` has margin `λ = 1/2`,
/// and any bounded perturbation `εA₁(u)` with `ε < λ/(‖H‖·sup‖A₁‖)` keeps
/// `H(A₀ + εA₁)` positive definite. A zero perturbation bound returns `+∞`.
pub fn perturbation_bound_constant(a0: &Matrix, a1_sup_norm: f64) -> Result<f64, EntropyError> {
    assert!(a1_sup_norm >= 0.0 && a1_sup_norm.is_finite());
    let h = solve_lyapunov(a0, &Matrix::identity(a0.n())).map_err(|_| {
        EntropyError::NotNormallyElliptic {
            min_real_part: f64::NAN,
        }
    })?;
    let (pd, lambda) = is_positive_definite(&h.matmul(a0), 1e-12);
    if !pd {
        return Err(EntropyError::NotNormallyElliptic {
            min_real_part: lambda,
        });
    }
    if a1_sup_norm == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(lambda / (h.norm_inf() * a1_sup_norm))
}
