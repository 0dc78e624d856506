//! Constructive factorizations `A = A₁A₂` with `A₁` symmetric positive
//! definite.
//!
//! Three kinds are provided, matching the three matrix classes they
//! characterize:
//!
//! | factorization               | exists iff `A` is                  | `A₂` is   |
//! |-----------------------------|------------------------------------|-----------|
//! | positive definite           | normally elliptic                  | pd        |
//! | symmetric                   | real-diagonalizable                | symmetric |
//! | symmetric positive definite | real-diagonalizable, `σ(A) ⊂ ℝ₊`   | spd       |
//!
//! Eigenvector scaling makes the symmetric factorizations witnesses rather
//! than canonical objects; tests must check properties, not exact entries.

use core::fmt;

use crate::default_tol;
use crate::ellipticity::{normal_ellipticity, NE_TOL_FACTOR};
use crate::linalg::{real_eigen_basis, EigError, Matrix};
use crate::lyapunov::{solve_lyapunov, LyapunovError};
use crate::Verdict;

/// Condition threshold on the eigenvector basis above which a matrix is
/// reported as numerically defective.
pub const DIAGONALIZABLE_COND_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    PositiveDefinite,
    Symmetric,
    SymmetricPositiveDefinite,
}

/// A factorization witness `A ≈ a1 · a2` with `a1` symmetric positive
/// definite and `a2` satisfying the kind's property; `residual` is
/// `‖a1·a2 − A‖∞`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub a1: Matrix,
    pub a2: Matrix,
    pub kind: FactorKind,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub enum FactorizeError {
    NotNormallyElliptic { min_real_part: f64 },
    NotDiagonalizable,
    NonPositiveSpectrum { min_eigenvalue: f64 },
    Lyapunov(LyapunovError),
    Eig(EigError),
}

impl fmt::Display for FactorizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorizeError::NotNormallyElliptic { min_real_part } => write!(
                f,
                "matrix is not normally elliptic (min eigenvalue real part {min_real_part:.3e})"
            ),
            FactorizeError::NotDiagonalizable => {
                write!(
                    f,
                    "matrix has complex eigenvalues or a defective eigenvector basis"
                )
            }
            FactorizeError::NonPositiveSpectrum { min_eigenvalue } => write!(
                f,
                "matrix has a non-positive eigenvalue ({min_eigenvalue:.3e})"
            ),
            FactorizeError::Lyapunov(e) => write!(f, "{e}"),
            FactorizeError::Eig(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FactorizeError {}

impl From<LyapunovError> for FactorizeError {
    fn from(e: LyapunovError) -> Self {
        FactorizeError::Lyapunov(e)
    }
}

impl From<EigError> for FactorizeError {
    fn from(e: EigError) -> Self {
        FactorizeError::Eig(e)
    }
}

fn finish(a: &Matrix, a1: Matrix, a2: Matrix, kind: FactorKind) -> Factorization {
    let residual = a1.matmul(&a2).sub(a).norm_inf();
    Factorization {
        a1,
        a2,
        kind,
        residual,
    }
}

/// Factor a normally elliptic `A` as `A₁A₂` with `A₁` spd and `A₂` positive
/// definite: `H` solves `HA + AᵀH = I`, then `A₁ = H⁻¹` and `A₂ = HA`, which
/// satisfies `A₂ + A₂ᵀ = I` by construction.
pub fn pd_factorize(a: &Matrix) -> Result<Factorization, FactorizeError> {
    let (verdict, min_re) = normal_ellipticity(a, NE_TOL_FACTOR * (1.0 + a.norm_inf()))?;
    if verdict != Verdict::Pass {
        return Err(FactorizeError::NotNormallyElliptic {
            min_real_part: min_re,
        });
    }
    let h = solve_lyapunov(a, &Matrix::identity(a.n()))?;
    let a1 = h
        .inverse()
        .map_err(|_| FactorizeError::NotNormallyElliptic {
            min_real_part: min_re,
        })?;
    let a2 = h.matmul(a);
    Ok(finish(a, a1, a2, FactorKind::PositiveDefinite))
}

/// Factor a real-diagonalizable `A = PΛP⁻¹` as `A₁A₂` with `A₁ = PPᵀ` spd
/// and `A₂ = P⁻ᵀΛP⁻¹` symmetric.
pub fn sym_factorize(a: &Matrix) -> Result<Factorization, FactorizeError> {
    let (a1, a2) = sym_parts(a)?;
    Ok(finish(a, a1, a2, FactorKind::Symmetric))
}

/// Factor a real-diagonalizable `A` with positive spectrum into two spd
/// matrices; same construction as [`sym_factorize`], where `Λ > 0` makes
/// `A₂ = P⁻ᵀΛP⁻¹` positive definite as well.
pub fn spd_factorize(a: &Matrix) -> Result<Factorization, FactorizeError> {
    let tol = default_tol(a.norm_inf());
    let basis = real_eigen_basis(a, tol).map_err(|e| match e {
        EigError::ComplexSpectrum => FactorizeError::NotDiagonalizable,
        other => FactorizeError::Eig(other),
    })?;
    let min_eig = basis.lambdas.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig <= tol {
        return Err(FactorizeError::NonPositiveSpectrum {
            min_eigenvalue: min_eig,
        });
    }
    let (a1, a2) = sym_parts(a)?;
    Ok(finish(a, a1, a2, FactorKind::SymmetricPositiveDefinite))
}

fn sym_parts(a: &Matrix) -> Result<(Matrix, Matrix), FactorizeError> {
    let tol = default_tol(a.norm_inf());
    let basis = real_eigen_basis(a, tol).map_err(|e| match e {
        EigError::ComplexSpectrum => FactorizeError::NotDiagonalizable,
        other => FactorizeError::Eig(other),
    })?;
    if !basis.condition.is_finite() || basis.condition > DIAGONALIZABLE_COND_LIMIT {
        return Err(FactorizeError::NotDiagonalizable);
    }
    let p = basis.p;
    let p_inv = p.inverse().map_err(|_| FactorizeError::NotDiagonalizable)?;
    let a1 = p.matmul(&p.transpose());
    let lambda = Matrix::diag(&basis.lambdas);
    // P⁻ᵀ Λ P⁻¹ is symmetric in exact arithmetic; symmetrize the roundoff.
    let a2 = p_inv
        .transpose()
        .matmul(&lambda)
        .matmul(&p_inv)
        .symmetric_part();
    Ok((a1, a2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inertia_of_symmetric, is_positive_definite};

    const REF: [f64; 4] = [1.0, 2.0, 0.0, 2.0];

    #[test]
    fn pd_factorize_identity() {
        let f = pd_factorize(&Matrix::identity(2)).unwrap();
        assert!(f.a1.sub(&Matrix::identity(2).scale(2.0)).norm_inf() < 1e-12);
        assert!(f.a2.sub(&Matrix::identity(2).scale(0.5)).norm_inf() < 1e-12);
        assert!(f.residual < 1e-12);
    }

    #[test]
    fn pd_factorize_reference() {
        let a = Matrix::from_rows(2, &REF);
        let f = pd_factorize(&a).unwrap();
        // A₂ = H·A with the known H; A₂ + A₂ᵀ = I by construction.
        let expected_a2 = Matrix::from_rows(2, &[0.5, 1.0 / 3.0, -1.0 / 3.0, 0.5]);
        assert!(f.a2.sub(&expected_a2).norm_inf() < 1e-12);
        assert!(
            f.a2.add(&f.a2.transpose())
                .sub(&Matrix::identity(2))
                .norm_inf()
                < 1e-12
        );
        assert!(f.residual < 1e-10);
        assert!(is_positive_definite(&f.a1, 1e-12).0);
        assert!(is_positive_definite(&f.a2, 1e-12).0);
    }

    #[test]
    fn pd_factorize_rejects_rotation() {
        let a = Matrix::from_rows(2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(matches!(
            pd_factorize(&a),
            Err(FactorizeError::NotNormallyElliptic { .. })
        ));
    }

    #[test]
    fn sym_factorize_diagonal_with_negative_eigenvalue() {
        let a = Matrix::diag(&[1.0, -2.0]);
        let f = sym_factorize(&a).unwrap();
        assert!(f.residual < 1e-12);
        assert!(is_positive_definite(&f.a1, 1e-12).0);
        assert!(f.a2.symmetry_defect() < 1e-12);
        // Sylvester: inertia of A₂ matches inertia of A.
        let inertia = inertia_of_symmetric(&f.a2, 1e-10).unwrap();
        assert_eq!((inertia.n_plus, inertia.n_minus), (1, 1));
    }

    #[test]
    fn sym_factorize_reference_properties() {
        let a = Matrix::from_rows(2, &REF);
        let f = sym_factorize(&a).unwrap();
        assert!(f.residual < 1e-9 * a.norm_inf());
        assert!(is_positive_definite(&f.a1, 1e-12).0);
        assert!(f.a2.symmetry_defect() < 1e-10);
    }

    #[test]
    fn known_spd_witness_for_reference_matrix() {
        // An explicit spd pair multiplying to [[1,2],[0,2]], exact over the
        // integers. Our construction returns some witness; this pins down
        // that one exists.
        let a1 = [[5i64, 2], [2, 1]];
        let a2 = [[1i64, -2], [-2, 6]];
        let mut prod = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    prod[i][j] += a1[i][k] * a2[k][j];
                }
            }
        }
        assert_eq!(prod, [[1, 2], [0, 2]]);
        assert!(is_positive_definite(&Matrix::from_rows(2, &[5.0, 2.0, 2.0, 1.0]), 1e-12).0);
        assert!(is_positive_definite(&Matrix::from_rows(2, &[1.0, -2.0, -2.0, 6.0]), 1e-12).0);
    }

    #[test]
    fn spd_factorize_reference() {
        let a = Matrix::from_rows(2, &REF);
        let f = spd_factorize(&a).unwrap();
        assert!(f.residual < 1e-10);
        assert!(is_positive_definite(&f.a1, 1e-12).0);
        assert!(is_positive_definite(&f.a2, 1e-12).0);
        assert!(f.a2.symmetry_defect() < 1e-10);
    }

    #[test]
    fn spd_factorize_diagonal() {
        let f = spd_factorize(&Matrix::diag(&[2.0, 3.0])).unwrap();
        assert!(f.a1.sub(&Matrix::identity(2)).norm_inf() < 1e-10);
        assert!(f.a2.sub(&Matrix::diag(&[2.0, 3.0])).norm_inf() < 1e-10);
    }

    #[test]
    fn spd_factorize_error_paths() {
        assert!(matches!(
            spd_factorize(&Matrix::diag(&[1.0, -1.0])),
            Err(FactorizeError::NonPositiveSpectrum { .. })
        ));
        let rotation = Matrix::from_rows(2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(matches!(
            spd_factorize(&rotation),
            Err(FactorizeError::NotDiagonalizable)
        ));
        assert!(matches!(
            sym_factorize(&rotation),
            Err(FactorizeError::NotDiagonalizable)
        ));
    }

    #[test]
    fn jordan_block_is_not_diagonalizable() {
        let a = Matrix::from_rows(2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(
            sym_factorize(&a),
            Err(FactorizeError::NotDiagonalizable)
        ));
    }

    #[test]
    fn pd_factorization_with_asymmetric_a2_exists() {
        // [[1,2],[0,2]] itself is positive definite (symmetric part has
        // eigenvalues (3±√5)/2 > 0), so A₁ = I, A₂ = A is a valid positive
        // definite factorization with asymmetric A₂: positive definiteness
        // of A₂ does not force symmetry.
        let a = Matrix::from_rows(2, &REF);
        let (pd, _) = is_positive_definite(&a, 1e-12);
        assert!(pd);
        assert!(a.symmetry_defect() > 1.0);
    }
}
