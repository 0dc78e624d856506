use alloc::vec::Vec;
use core::fmt;

// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::default_tol;

use super::Matrix;

/// Inertia of a symmetric matrix: counts of positive, negative, and
/// (numerically) zero eigenvalues. Invariant under congruence by Sylvester's
/// inertia theorem, which is what makes it useful for products `A₁A₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymError {
    /// Input violated the symmetry precondition.
    NotSymmetric,
}

impl fmt::Display for SymError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymError::NotSymmetric => write!(f, "matrix is not symmetric within tolerance"),
        }
    }
}

impl core::error::Error for SymError {}

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
///
/// Jacobi is slow in theory and excellent in practice at these sizes: it is
/// unconditionally convergent and computes small eigenvalues to high relative
/// accuracy, which matters because definiteness margins are read off them.
pub fn symmetric_eigenvalues(s: &Matrix) -> Vec<f64> {
    let n = s.n();
    let mut a = s.symmetric_part();
    let scale = a.norm_inf().max(1.0);
    let tol = f64::EPSILON * scale;

    for _sweep in 0..50 {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in i + 1..n {
                off = off.max(a[(i, j)].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = {
                    let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s_ = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s_ * akq;
                    a[(k, q)] = s_ * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s_ * aqk;
                    a[(q, k)] = s_ * apk + c * aqk;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Positive definiteness in the nonsymmetric sense: `zᵀAz > 0` for `z ≠ 0`.
///
/// The margin is the smallest eigenvalue of the symmetric part `(A + Aᵀ)/2`;
/// the verdict is `margin > tol`.
pub fn is_positive_definite(a: &Matrix, tol: f64) -> (bool, f64) {
    let eig = symmetric_eigenvalues(&a.symmetric_part());
    let margin = eig[0];
    (margin > tol, margin)
}

/// Inertia of a symmetric matrix: counts of eigenvalues above `tol`, below
/// `-tol`, and in between. Errors when the input is not symmetric within
/// `tol·‖S‖`.
pub fn inertia_of_symmetric(s: &Matrix, tol: f64) -> Result<Inertia, SymError> {
    if s.symmetry_defect() > tol.max(default_tol(s.norm_inf())) * s.norm_inf().max(1.0) {
        return Err(SymError::NotSymmetric);
    }
    let eig = symmetric_eigenvalues(s);
    let mut inertia = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    for lambda in eig {
        if lambda > tol {
            inertia.n_plus += 1;
        } else if lambda < -tol {
            inertia.n_minus += 1;
        } else {
            inertia.n_zero += 1;
        }
    }
    Ok(inertia)
}
