//! Normal-ellipticity certificates.
//!
//! A matrix is normally elliptic when every eigenvalue has strictly positive
//! real part — the minimal condition for local well-posedness of the
//! diffusion operator. Besides the direct spectral test this module carries
//! the cheap sufficient certificates: Routh–Hurwitz for `n = 3`, diagonal
//! dominance after a similarity by `diag(u)`, the coefficient conditions for
//! the population families, and the sharp 2×2 criterion for fluid mixtures.

use alloc::string::String;
use core::fmt;

use crate::linalg::{eigenvalues, leading_principal_minors, EigError, Matrix};
use crate::models::{ModelError, ModelSpec};
use crate::Verdict;

/// Relative tolerance factor for ellipticity verdicts: margins within
/// `1e-9·(1+‖A‖)` of zero are indeterminate, since the underlying conditions
/// are strict inequalities.
pub const NE_TOL_FACTOR: f64 = 1e-9;

/// Default verdict tolerance for a matrix of this norm.
pub fn ne_tol(a: &Matrix) -> f64 {
    NE_TOL_FACTOR * (1.0 + a.norm_inf())
}

#[derive(Debug, Clone)]
pub enum EllipticityError {
    Dimension { expected: usize, got: usize },
    ContractViolation(String),
    Eig(EigError),
    Model(ModelError),
}

impl fmt::Display for EllipticityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticityError::Dimension { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            EllipticityError::ContractViolation(msg) => write!(f, "{msg}"),
            EllipticityError::Eig(e) => write!(f, "{e}"),
            EllipticityError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EllipticityError {}

impl From<EigError> for EllipticityError {
    fn from(e: EigError) -> Self {
        EllipticityError::Eig(e)
    }
}

impl From<ModelError> for EllipticityError {
    fn from(e: ModelError) -> Self {
        EllipticityError::Model(e)
    }
}

/// Tri-state normal-ellipticity verdict with the spectral margin
/// (the smallest eigenvalue real part).
pub fn normal_ellipticity(a: &Matrix, tol: f64) -> Result<(Verdict, f64), EigError> {
    let spectrum = eigenvalues(a, tol)?;
    let margin = spectrum.min_real_part;
    Ok((Verdict::from_margin(margin, tol), margin))
}

/// Boolean form: true iff the minimal eigenvalue real part exceeds `tol`.
pub fn is_normally_elliptic(a: &Matrix, tol: f64) -> Result<(bool, f64), EigError> {
    let (verdict, margin) = normal_ellipticity(a, tol)?;
    Ok((verdict == Verdict::Pass, margin))
}

/// Routh–Hurwitz data for a 3×3 matrix: the characteristic polynomial of
/// `−A` is `λ³ + b₂λ² + b₁λ + b₀` with `b₂ = tr A`, `b₁` the sum of the
/// three 2×2 principal minors, and `b₀ = det A`.
#[derive(Debug, Clone, Copy)]
pub struct RouthHurwitz {
    pub stable: bool,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

/// Routh–Hurwitz certificate for `n = 3`: all eigenvalues of `A` have
/// positive real part iff `b₀, b₁, b₂ > 0` and `b₂·b₁ > b₀`.
pub fn routh_hurwitz_3(a: &Matrix) -> Result<RouthHurwitz, EllipticityError> {
    if a.n() != 3 {
        return Err(EllipticityError::Dimension {
            expected: 3,
            got: a.n(),
        });
    }
    let b2 = a.trace();
    let minor = |i: usize, j: usize| a[(i, i)] * a[(j, j)] - a[(i, j)] * a[(j, i)];
    let b1 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let b0 = a.det();
    let stable = b0 > 0.0 && b1 > 0.0 && b2 > 0.0 && b2 * b1 > b0;
    Ok(RouthHurwitz { stable, b0, b1, b2 })
}

/// Diagonal-dominance certificate: forms `Ã = U⁻¹AU` with `U = diag(u)` and
/// checks strict row diagonal dominance with positive diagonal. True implies
/// normal ellipticity (Gershgorin); the converse fails.
pub fn diagonal_dominance_certificate(a: &Matrix, u: &[f64]) -> Result<bool, EllipticityError> {
    let n = a.n();
    if u.len() != n {
        return Err(EllipticityError::Dimension {
            expected: n,
            got: u.len(),
        });
    }
    if u.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(EllipticityError::ContractViolation(String::from(
            "similarity weights must be strictly positive",
        )));
    }
    for i in 0..n {
        let diag = a[(i, i)];
        if diag <= 0.0 {
            return Ok(false);
        }
        let off: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| (a[(i, j)] * u[j] / u[i]).abs())
            .sum();
        if diag <= off {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficient certificate for the linear population family: with
/// `aᵢ₀ ≥ 0`, `aᵢⱼ ≥ 0`, the condition `aᵢ₀ + aᵢᵢ > 0` for every `i` makes
/// `A(u)` normally elliptic at all positive `u` (the similarity-transformed
/// matrix is strictly diagonally dominant).
pub fn skt_ne_certificate(a0: &[f64], a: &Matrix) -> Result<bool, EllipticityError> {
    let n = a.n();
    if a0.len() != n {
        return Err(EllipticityError::Dimension {
            expected: n,
            got: a0.len(),
        });
    }
    if a0.iter().any(|&x| x < 0.0) || a.as_slice().iter().any(|&x| x < 0.0) {
        return Err(EllipticityError::ContractViolation(String::from(
            "population coefficients must be nonnegative",
        )));
    }
    Ok((0..n).all(|i| a0[i] + a[(i, i)] > 0.0))
}

/// Combinatorial certificate for 3-species population coefficients with
/// `bᵢⱼ = aᵢⱼ` off the diagonal and `bᵢᵢ = aᵢ₀ + aᵢᵢ`: the family is
/// normally elliptic at every positive `u` whenever some triple
/// `(i, j, k)` avoiding `(i,j) = (2,1)`, `(i,k) = (3,1)`, `(j,k) = (3,2)`
/// (1-based) has `b₁ᵢ·b₂ⱼ·b₃ₖ > 0`. Returns the first admissible triple in
/// 0-based indices, or `None`.
pub fn skt3_admissible_triple(
    a0: &[f64],
    a: &Matrix,
) -> Result<Option<(usize, usize, usize)>, EllipticityError> {
    if a.n() != 3 || a0.len() != 3 {
        return Err(EllipticityError::Dimension {
            expected: 3,
            got: a.n().max(a0.len()),
        });
    }
    if a0.iter().any(|&x| x < 0.0) || a.as_slice().iter().any(|&x| x < 0.0) {
        return Err(EllipticityError::ContractViolation(String::from(
            "population coefficients must be nonnegative",
        )));
    }
    let b = |row: usize, col: usize| {
        if row == col {
            a0[row] + a[(row, row)]
        } else {
            a[(row, col)]
        }
    };
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                // Excluded index pairs, 0-based: (i,j)=(1,0), (i,k)=(2,0), (j,k)=(2,1).
                if (i, j) == (1, 0) || (i, k) == (2, 0) || (j, k) == (2, 1) {
                    continue;
                }
                if b(0, i) * b(1, j) * b(2, k) > 0.0 {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// Generalized population condition for nonlinear rates: true iff at every
/// sample all `∂pᵢ/∂uⱼ ≥ 0` and `pᵢ(u) > Σ_{k≠i} uₖ·∂pᵢ/∂uₖ` hold.
pub fn generalized_skt_condition(
    model: &ModelSpec,
    samples: &[&[f64]],
) -> Result<bool, EllipticityError> {
    for &u in samples {
        if !model.contains(u) {
            return Err(EllipticityError::ContractViolation(String::from(
                "sample outside the model domain",
            )));
        }
        let p = model.pressure_values(u)?;
        let q = model.pressure_jacobian(u)?;
        let n = model.n();
        for i in 0..n {
            let mut cross = 0.0;
            for k in 0..n {
                if q[(i, k)] < 0.0 {
                    return Ok(false);
                }
                if k != i {
                    cross += u[k] * q[(i, k)];
                }
            }
            if p[i] <= cross {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sharp 2×2 fluid-mixture criterion for nonnegative pressure coefficients:
/// `A(u) = diag(u)·a` is normally elliptic on the whole orthant iff
/// `det a > 0`, while `a` itself is positive definite iff
/// `det a > (a₁₂ − a₂₁)²/4` — strictly more restrictive unless `a` is
/// symmetric.
#[derive(Debug, Clone, Copy)]
pub struct Fluid2x2 {
    pub normally_elliptic: bool,
    pub positive_definite: bool,
    pub det: f64,
}

pub fn fluid_2x2_iff(a: &Matrix) -> Result<Fluid2x2, EllipticityError> {
    if a.n() != 2 {
        return Err(EllipticityError::Dimension {
            expected: 2,
            got: a.n(),
        });
    }
    if a.as_slice().iter().any(|&x| x < 0.0) {
        return Err(EllipticityError::ContractViolation(String::from(
            "fluid coefficients must be nonnegative",
        )));
    }
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let skew = a[(0, 1)] - a[(1, 0)];
    Ok(Fluid2x2 {
        normally_elliptic: det > 0.0,
        positive_definite: det > 0.25 * skew * skew,
        det,
    })
}

/// Positivity of all leading principal minors — Sylvester-style certificate
/// used with separable entropies.
pub fn leading_minors_positive(a: &Matrix, tol: f64) -> Verdict {
    let minors = leading_principal_minors(a);
    let mut verdict = Verdict::Pass;
    for m in minors {
        verdict = verdict.and(Verdict::from_margin(m, tol));
    }
    verdict
}
