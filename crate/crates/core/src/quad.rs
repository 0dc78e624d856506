//! Quadrature helpers: Gauss–Legendre nodes, adaptive Simpson, and the
//! composite Simpson rule used by the Lyapunov integral oracle.

use alloc::vec::Vec;
use core::fmt;

// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadError {
    /// Adaptive refinement hit its depth limit without meeting the tolerance.
    NotIntegrable,
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NotIntegrable => write!(f, "adaptive quadrature failed to converge"),
        }
    }
}

impl core::error::Error for QuadError {}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, computed by Newton
/// iteration on the Legendre polynomial. Exact for polynomials of degree
/// `2m − 1`.
pub fn gauss_legendre_nodes(m: usize) -> Vec<(f64, f64)> {
    assert!((1..=64).contains(&m));
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th root.
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Legendre polynomial `P_m(x)` and its derivative by the three-term
/// recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order Gauss–Legendre integral of `f` over `[a, b]`.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_legendre_nodes(m)
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Adaptive Simpson integration to absolute tolerance `tol`.
pub fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, QuadError> {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol, 40)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, QuadError> {
    let m = 0.5 * (a + b);
    let lm = f(0.5 * (a + m));
    let rm = f(0.5 * (m + b));
    let left = simpson(a, m, fa, lm, fm);
    let right = simpson(m, b, fm, rm, fb);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    if depth == 0 {
        return Err(QuadError::NotIntegrable);
    }
    let l = adaptive_step(f, a, m, fa, lm, fm, left, 0.5 * tol, depth - 1)?;
    let r = adaptive_step(f, m, b, fm, rm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Weights of the composite Simpson rule with `steps` (even) intervals on
/// `[0, length]`; returns `(node, weight)` pairs.
pub fn composite_simpson_weights(length: f64, steps: usize) -> Vec<(f64, f64)> {
    assert!(steps >= 2 && steps.is_multiple_of(2), "steps must be even");
    let h = length / steps as f64;
    (0..=steps)
        .map(|k| {
            let w = if k == 0 || k == steps {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (k as f64 * h, w * h / 3.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        // ∫₀¹ x⁵ dx = 1/6 with 3 nodes (exact through degree 5).
        let v = gauss_legendre(|x| x * x * x * x * x, 0.0, 1.0, 3);
        assert!((v - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_simpson_log() {
        // ∫₁ᵉ ln x dx = 1.
        let v = adaptive_simpson(&|x: f64| x.ln(), 1.0, core::f64::consts::E, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn composite_simpson_weights_sum_to_length() {
        let w: f64 = composite_simpson_weights(3.0, 10).iter().map(|p| p.1).sum();
        assert!((w - 3.0).abs() < 1e-13);
    }
}
