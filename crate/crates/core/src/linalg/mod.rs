//! Dense real matrix kernel.
//!
//! Everything downstream (Lyapunov solves, factorizations, ellipticity
//! certificates, entropy verdicts) is built on this module. Matrices are
//! square, row-major, and small (dimension at most 16), so the
//! implementations favour robustness over asymptotic speed: partial-pivot
//! LU for determinants and solves, cyclic Jacobi for symmetric eigenvalues,
//! closed-form characteristic roots for dimension ≤ 4 and a shifted
//! Hessenberg QR iteration above that.

mod eig;
mod lu;
mod matrix;
mod sym;

pub use eig::{
    eigenvalue_list, eigenvalues, real_eigen_basis, spectral_radius, EigError, RealEigenBasis,
    Spectrum, MAX_DIM,
};
pub use lu::LuError;
pub use matrix::Matrix;
pub use sym::{
    inertia_of_symmetric, is_positive_definite, symmetric_eigenvalues, Inertia, SymError,
};

use alloc::vec::Vec;

/// Leading principal minors of `a`: the k-th entry is the determinant of the
/// top-left k×k submatrix, each computed by partial-pivot elimination.
pub fn leading_principal_minors(a: &Matrix) -> Vec<f64> {
    (1..=a.n()).map(|k| a.leading_submatrix(k).det()).collect()
}

/// Operator norm induced by the max norm on ℝⁿ: the maximum absolute row sum.
pub fn operator_norm(a: &Matrix) -> f64 {
    a.norm_inf()
}
