//! The Lyapunov matrix equation `HA + AᵀH = G`.
//!
//! The direct solver assembles the n²×n² Kronecker-structured linear system
//! and eliminates with partial pivoting — at dimension ≤ 16 that is at most
//! 256 unknowns, so exactness of the contract beats asymptotic speed. The
//! integral oracle evaluates `H = ∫₀^∞ e^{−Aᵀt} e^{−At} dt` by matrix
//! exponentials and composite Simpson quadrature, an algorithmically
//! independent path whose whole value is cross-checking the solver.

use alloc::vec;
use core::fmt;

use crate::default_tol;
use crate::expm::expm;
use crate::linalg::{eigenvalues, EigError, Matrix};
use crate::quad::composite_simpson_weights;

#[derive(Debug, Clone)]
pub enum LyapunovError {
    /// The spectral solvability condition `λᵢ + λⱼ ≠ 0` is violated (the
    /// Kronecker system is singular).
    Solvability,
    /// The integrand failed to decay by `t_max`; the matrix is not normally
    /// elliptic or the horizon is too short.
    Divergence {
        norm_at_t_max: f64,
    },
    Eig(EigError),
}

impl fmt::Display for LyapunovError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LyapunovError::Solvability => {
                write!(f, "eigenvalue pair sums to zero: Lyapunov equation is singular")
            }
            LyapunovError::Divergence { norm_at_t_max } => write!(
                f,
                "matrix exponential has norm {norm_at_t_max:.3e} at the quadrature horizon; integral does not converge"
            ),
            LyapunovError::Eig(e) => write!(f, "eigenvalue computation failed: {e}"),
        }
    }
}

impl core::error::Error for LyapunovError {}

impl From<EigError> for LyapunovError {
    fn from(e: EigError) -> Self {
        LyapunovError::Eig(e)
    }
}

/// Solve `HA + AᵀH = G` for `H`.
///
/// Requires `λᵢ + λⱼ ≠ 0` for all eigenvalue pairs of `A` (implied by normal
/// ellipticity). When `G` is symmetric the unique solution is symmetric; when
/// additionally `A` is normally elliptic and `G` is symmetric positive
/// definite, so is `H`.
pub fn solve_lyapunov(a: &Matrix, g: &Matrix) -> Result<Matrix, LyapunovError> {
    let n = a.n();
    assert_eq!(g.n(), n, "dimension mismatch");

    let spectrum = eigenvalues(a, default_tol(a.norm_inf()))?;
    let scale = spectrum.max_abs().max(1.0);
    for (i, li) in spectrum.eigenvalues.iter().enumerate() {
        for lj in spectrum.eigenvalues.iter().skip(i) {
            if (li + lj).norm() <= 1e-12 * scale {
                return Err(LyapunovError::Solvability);
            }
        }
    }

    // Column-stacked unknown: vec(H)[j·n + i] = H[i, j].
    // vec(HA) = (Aᵀ ⊗ I) vec(H), vec(AᵀH) = (I ⊗ Aᵀ) vec(H).
    let nn = n * n;
    let mut m = Matrix::zeros(nn);
    for j in 0..n {
        for i in 0..n {
            let row = j * n + i;
            for l in 0..n {
                m[(row, l * n + i)] += a[(l, j)];
            }
            for k in 0..n {
                m[(row, j * n + k)] += a[(k, i)];
            }
        }
    }
    let mut rhs = vec![0.0; nn];
    for j in 0..n {
        for i in 0..n {
            rhs[j * n + i] = g[(i, j)];
        }
    }

    let x = m.solve(&rhs).map_err(|_| LyapunovError::Solvability)?;
    let mut h = Matrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            h[(i, j)] = x[j * n + i];
        }
    }
    Ok(h)
}

/// Quadrature approximation of `H = ∫₀^∞ e^{−Aᵀt} e^{−At} dt`, i.e. the
/// Lyapunov solution for `G = I`, truncated at `t_max` with a composite
/// Simpson rule over `steps` (even) intervals.
///
/// Errors when `e^{−A·t_max}` has not decayed below `1e-6`, which happens
/// exactly when `A` is not normally elliptic or the horizon is too short.
pub fn lyapunov_integral_oracle(
    a: &Matrix,
    t_max: f64,
    steps: usize,
) -> Result<Matrix, LyapunovError> {
    let n = a.n();
    assert!(t_max > 0.0 && steps >= 2 && steps.is_multiple_of(2));
    let h_step = t_max / steps as f64;
    let e_step = expm(&a.scale(-h_step));

    // Accumulate e^{−A·k·h} by repeated multiplication; at these sizes the
    // drift stays far below the 1e-6 agreement target.
    let weights = composite_simpson_weights(t_max, steps);
    let mut e_k = Matrix::identity(n);
    let mut acc = Matrix::zeros(n);
    for (k, &(_, w)) in weights.iter().enumerate() {
        acc = acc.add(&e_k.transpose().matmul(&e_k).scale(w));
        if k < weights.len() - 1 {
            e_k = e_k.matmul(&e_step);
        }
    }

    let tail = e_k.norm_inf();
    if tail >= 1e-6 {
        return Err(LyapunovError::Divergence {
            norm_at_t_max: tail,
        });
    }
    Ok(acc)
}

/// Integral oracle with an automatically chosen horizon and step count based
/// on the spectral abscissa of `−A`.
pub fn lyapunov_integral_oracle_auto(a: &Matrix) -> Result<Matrix, LyapunovError> {
    let spectrum = eigenvalues(a, default_tol(a.norm_inf()))?;
    let min_re = spectrum.min_real_part;
    if min_re <= 0.0 {
        return Err(LyapunovError::Divergence {
            norm_at_t_max: f64::INFINITY,
        });
    }
    let t_max = 25.0 / min_re;
    // Composite Simpson error scales like h⁴·‖A‖⁴; 40 nodes per unit of
    // t·‖A‖ keeps it well under the 1e-6 agreement target.
    let steps = ((t_max * a.norm_inf().max(1.0) * 40.0) as usize)
        .clamp(800, 8000)
        .next_multiple_of(2);
    lyapunov_integral_oracle(a, t_max, steps)
}

/// Both sides of the tempting closed form `det H = 1/(2·tr A)` for the
/// `G = I` Lyapunov solution.
///
/// The formula comes from interchanging a determinant with the defining
/// integral, which is not valid, so the two values disagree in general
/// (already for `[[1, 2], [0, 2]]`, where `det H = 13/72` while
/// `1/(2·tr A) = 1/6`). This helper exists so reports can tabulate the gap;
/// nothing in the crate asserts the identity.
#[derive(Debug, Clone, Copy)]
pub struct DetIdentityGap {
    pub det_h: f64,
    pub half_inv_trace: f64,
}

pub fn det_identity_gap(a: &Matrix) -> Result<DetIdentityGap, LyapunovError> {
    let h = solve_lyapunov(a, &Matrix::identity(a.n()))?;
    Ok(DetIdentityGap {
        det_h: h.det(),
        half_inv_trace: 1.0 / (2.0 * a.trace()),
    })
}
