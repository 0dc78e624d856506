use alloc::vec::Vec;

// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::Matrix;
use crate::models::Pressures;
use crate::poly::Poly1;
use crate::quad::{adaptive_simpson, gauss_legendre_nodes};

use super::EntropyError;

/// Convex potential block of the volume-filling density.
#[derive(Debug, Clone)]
pub enum Chi {
    None,
    /// `χ(u) = ½uᵀCu` with `C` symmetric positive semidefinite.
    Quadratic(Matrix),
    /// Separable `χᵢ'(uᵢ) = ln pᵢ(uᵢ)` for `pᵢ(uᵢ) = βᵢ + uᵢ^{sᵢ}`.
    SeparableLog {
        beta: Vec<f64>,
        s: Vec<f64>,
    },
}

impl Chi {
    fn value(&self, u: &[f64], lower: f64) -> Result<f64, EntropyError> {
        match self {
            Chi::None => Ok(0.0),
            Chi::Quadratic(c) => {
                let cu = c.mul_vec(u);
                Ok(0.5 * u.iter().zip(cu.iter()).map(|(x, y)| x * y).sum::<f64>())
            }
            Chi::SeparableLog { beta, s } => {
                let mut total = 0.0;
                for (i, &x) in u.iter().enumerate() {
                    let (b, e) = (beta[i], s[i]);
                    let f = move |t: f64| (b + t.powf(e)).ln();
                    total += adaptive_simpson(&f, lower, x, 1e-11)?;
                }
                Ok(total)
            }
        }
    }

    fn grad(&self, i: usize, u: &[f64]) -> f64 {
        match self {
            Chi::None => 0.0,
            Chi::Quadratic(c) => (0..u.len()).map(|k| c[(i, k)] * u[k]).sum(),
            Chi::SeparableLog { beta, s } => (beta[i] + u[i].powf(s[i])).ln(),
        }
    }

    fn hess(&self, i: usize, j: usize, u: &[f64]) -> f64 {
        match self {
            Chi::None => 0.0,
            Chi::Quadratic(c) => c[(i, j)],
            Chi::SeparableLog { beta, s } => {
                if i != j {
                    0.0
                } else {
                    let p = beta[i] + u[i].powf(s[i]);
                    s[i] * u[i].powf(s[i] - 1.0) / p
                }
            }
        }
    }
}

/// One-species second-derivative spec for separable densities.
#[derive(Debug, Clone)]
pub enum Func1 {
    /// `h'' = c`
    Const(f64),
    /// `h'' = w/x`
    Recip(f64),
    /// `h''` polynomial in `x`
    Poly(Poly1),
    /// `h'' = |num(x)/den(x)|`
    AbsRatio { num: Poly1, den: Poly1 },
}

impl Func1 {
    fn hess(&self, x: f64) -> Result<f64, EntropyError> {
        match self {
            Func1::Const(c) => Ok(*c),
            Func1::Recip(w) => {
                if x <= 0.0 {
                    return Err(EntropyError::Domain);
                }
                Ok(w / x)
            }
            Func1::Poly(p) => Ok(p.eval(x)),
            Func1::AbsRatio { num, den } => {
                let d = den.eval(x);
                if d == 0.0 {
                    return Err(EntropyError::Domain);
                }
                Ok((num.eval(x) / d).abs())
            }
        }
    }

    /// `∫_star^x h''`
    fn grad(&self, x: f64, star: f64) -> Result<f64, EntropyError> {
        match self {
            Func1::Const(c) => Ok(c * (x - star)),
            Func1::Recip(w) => {
                if x <= 0.0 || star <= 0.0 {
                    return Err(EntropyError::Domain);
                }
                Ok(w * (x / star).ln())
            }
            Func1::Poly(p) => Ok(p.antiderivative_eval(x) - p.antiderivative_eval(star)),
            Func1::AbsRatio { num, den } => {
                let f = |t: f64| (num.eval(t) / den.eval(t)).abs();
                Ok(adaptive_simpson(&f, star, x, 1e-11)?)
            }
        }
    }

    /// `∫_star^x ∫_star^v h''`
    fn value(&self, x: f64, star: f64) -> Result<f64, EntropyError> {
        match self {
            Func1::Const(c) => Ok(0.5 * c * (x - star) * (x - star)),
            Func1::Recip(w) => {
                if x <= 0.0 || star <= 0.0 {
                    return Err(EntropyError::Domain);
                }
                Ok(w * (x * (x / star).ln() - (x - star)))
            }
            Func1::Poly(_) | Func1::AbsRatio { .. } => {
                let f = |v: f64| self.grad(v, star).unwrap_or(f64::NAN);
                let out = adaptive_simpson(&f, star, x, 1e-10)?;
                if out.is_finite() {
                    Ok(out)
                } else {
                    Err(EntropyError::Domain)
                }
            }
        }
    }
}

/// Which construction produced a density.
#[derive(Debug, Clone)]
pub enum EntropyKind {
    /// `h(u) = Σᵢ πᵢ uᵢ(ln uᵢ − 1)`
    Boltzmann { pi: Vec<f64> },
    /// `h(u) = ½uᵀHu`
    Quadratic { h: Matrix },
    /// `h(u) = Σᵢ uᵢ(ln uᵢ − 1) + γ∫_a^{u₀} ln s ds + χ(u)` on the simplex
    VolumeFilling { gamma: f64, chi: Chi, lower: f64 },
    /// `∂h/∂uᵢ = πᵢpᵢ(u)`, reconstructed along straight paths
    Potential {
        pi: Vec<f64>,
        reference: Vec<f64>,
        pressures: Pressures,
    },
    /// `h(u) = Σᵢ hᵢ(uᵢ)` from per-species second derivatives
    Separable { parts: Vec<Func1>, star: Vec<f64> },
}

/// Evaluator triple `(h, ∇h, h'')` over the model domain.
///
/// Densities are defined up to affine gauge terms, which change neither the
/// Hessian (hence no verdict) nor discrete entropy differences along
/// mass-conserving dynamics.
#[derive(Debug, Clone)]
pub struct EntropyDensity {
    kind: EntropyKind,
}

impl EntropyDensity {
    pub fn new(kind: EntropyKind) -> Self {
        EntropyDensity { kind }
    }

    pub fn kind(&self) -> &EntropyKind {
        &self.kind
    }

    pub fn provenance(&self) -> &'static str {
        match self.kind {
            EntropyKind::Boltzmann { .. } => "boltzmann",
            EntropyKind::Quadratic { .. } => "quadratic",
            EntropyKind::VolumeFilling { .. } => "volume_filling",
            EntropyKind::Potential { .. } => "potential",
            EntropyKind::Separable { .. } => "separable",
        }
    }

    pub fn value(&self, u: &[f64]) -> Result<f64, EntropyError> {
        match &self.kind {
            EntropyKind::Boltzmann { pi } => {
                check_len(pi.len(), u)?;
                let mut total = 0.0;
                for (&p, &x) in pi.iter().zip(u.iter()) {
                    if x <= 0.0 {
                        return Err(EntropyError::Domain);
                    }
                    total += p * x * (x.ln() - 1.0);
                }
                Ok(total)
            }
            EntropyKind::Quadratic { h } => {
                check_len(h.n(), u)?;
                let hu = h.mul_vec(u);
                Ok(0.5 * u.iter().zip(hu.iter()).map(|(x, y)| x * y).sum::<f64>())
            }
            EntropyKind::VolumeFilling { gamma, chi, lower } => {
                let u0 = simplex_free_space(u)?;
                let mut total = 0.0;
                for &x in u {
                    total += x * (x.ln() - 1.0);
                }
                // ∫_a^{u₀} ln(s^γ) ds = γ[s ln s − s]_a^{u₀}
                total += gamma * ((u0 * u0.ln() - u0) - (lower * lower.ln() - lower));
                total += chi.value(u, *lower)?;
                Ok(total)
            }
            EntropyKind::Potential {
                pi,
                reference,
                pressures,
            } => {
                check_len(pi.len(), u)?;
                // Line integral of Σᵢ πᵢpᵢ duᵢ along the straight path from
                // the reference point; Gauss–Legendre of sufficient order is
                // exact for polynomial pressures.
                let order = match pressures.degree() {
                    Some(d) => (d as usize / 2 + 1).max(2),
                    None => 32,
                };
                let nodes = gauss_legendre_nodes(order);
                let mut total = 0.0;
                let mut point = alloc::vec![0.0; u.len()];
                for &(xi, w) in &nodes {
                    let t = 0.5 * (xi + 1.0);
                    for (k, p) in point.iter_mut().enumerate() {
                        *p = reference[k] + t * (u[k] - reference[k]);
                    }
                    let pv = pressures.values(&point);
                    let mut integrand = 0.0;
                    for i in 0..u.len() {
                        integrand += pi[i] * pv[i] * (u[i] - reference[i]);
                    }
                    total += 0.5 * w * integrand;
                }
                Ok(total)
            }
            EntropyKind::Separable { parts, star } => {
                check_len(parts.len(), u)?;
                let mut total = 0.0;
                for (i, part) in parts.iter().enumerate() {
                    total += part.value(u[i], star[i])?;
                }
                Ok(total)
            }
        }
    }

    pub fn gradient(&self, u: &[f64]) -> Result<Vec<f64>, EntropyError> {
        match &self.kind {
            EntropyKind::Boltzmann { pi } => {
                check_len(pi.len(), u)?;
                pi.iter()
                    .zip(u.iter())
                    .map(|(&p, &x)| {
                        if x <= 0.0 {
                            Err(EntropyError::Domain)
                        } else {
                            Ok(p * x.ln())
                        }
                    })
                    .collect()
            }
            EntropyKind::Quadratic { h } => {
                check_len(h.n(), u)?;
                Ok(h.mul_vec(u))
            }
            EntropyKind::VolumeFilling { gamma, chi, .. } => {
                let u0 = simplex_free_space(u)?;
                (0..u.len())
                    .map(|i| {
                        if u[i] <= 0.0 {
                            return Err(EntropyError::Domain);
                        }
                        Ok(u[i].ln() - gamma * u0.ln() + chi.grad(i, u))
                    })
                    .collect()
            }
            EntropyKind::Potential { pi, pressures, .. } => {
                check_len(pi.len(), u)?;
                let pv = pressures.values(u);
                Ok(pi.iter().zip(pv.iter()).map(|(&p, &v)| p * v).collect())
            }
            EntropyKind::Separable { parts, star } => {
                check_len(parts.len(), u)?;
                parts
                    .iter()
                    .enumerate()
                    .map(|(i, part)| part.grad(u[i], star[i]))
                    .collect()
            }
        }
    }

    pub fn hessian(&self, u: &[f64]) -> Result<Matrix, EntropyError> {
        match &self.kind {
            EntropyKind::Boltzmann { pi } => {
                check_len(pi.len(), u)?;
                if u.iter().any(|&x| x <= 0.0) {
                    return Err(EntropyError::Domain);
                }
                Ok(Matrix::diag(
                    &pi.iter()
                        .zip(u.iter())
                        .map(|(&p, &x)| p / x)
                        .collect::<Vec<_>>(),
                ))
            }
            EntropyKind::Quadratic { h } => {
                check_len(h.n(), u)?;
                Ok(h.clone())
            }
            EntropyKind::VolumeFilling { gamma, chi, .. } => {
                let u0 = simplex_free_space(u)?;
                if u.iter().any(|&x| x <= 0.0) {
                    return Err(EntropyError::Domain);
                }
                let n = u.len();
                Ok(Matrix::from_fn(n, |i, j| {
                    let diag = if i == j { 1.0 / u[i] } else { 0.0 };
                    diag + gamma / u0 + chi.hess(i, j, u)
                }))
            }
            EntropyKind::Potential { pi, pressures, .. } => {
                check_len(pi.len(), u)?;
                let q = pressures.jacobian(u);
                let n = u.len();
                Ok(Matrix::from_fn(n, |i, j| pi[i] * q[(i, j)]))
            }
            EntropyKind::Separable { parts, star: _ } => {
                check_len(parts.len(), u)?;
                let diag: Result<Vec<f64>, EntropyError> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, part)| part.hess(u[i]))
                    .collect();
                Ok(Matrix::diag(&diag?))
            }
        }
    }
}

fn check_len(n: usize, u: &[f64]) -> Result<(), EntropyError> {
    if u.len() == n {
        Ok(())
    } else {
        Err(EntropyError::Domain)
    }
}

fn simplex_free_space(u: &[f64]) -> Result<f64, EntropyError> {
    let u0 = 1.0 - u.iter().sum::<f64>();
    if u0 <= 0.0 || u.iter().any(|&x| x <= 0.0) {
        Err(EntropyError::Domain)
    } else {
        Ok(u0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fd_check(h: &EntropyDensity, u: &[f64]) {
        let n = u.len();
        let step = 1e-6;
        let grad = h.gradient(u).unwrap();
        let hess = h.hessian(u).unwrap();
        for j in 0..n {
            let mut up = u.to_vec();
            let mut dn = u.to_vec();
            up[j] += step;
            dn[j] -= step;
            let fd_g = (h.value(&up).unwrap() - h.value(&dn).unwrap()) / (2.0 * step);
            assert!(
                (grad[j] - fd_g).abs() < 1e-6 * (1.0 + fd_g.abs()),
                "grad[{j}]: {} vs {}",
                grad[j],
                fd_g
            );
            let gu = h.gradient(&up).unwrap();
            let gd = h.gradient(&dn).unwrap();
            for i in 0..n {
                let fd_h = (gu[i] - gd[i]) / (2.0 * step);
                assert!(
                    (hess[(i, j)] - fd_h).abs() < 1e-6 * (1.0 + fd_h.abs()),
                    "hess[({i},{j})]: {} vs {}",
                    hess[(i, j)],
                    fd_h
                );
            }
        }
    }

    #[test]
    fn boltzmann_values() {
        let h = EntropyDensity::new(EntropyKind::Boltzmann { pi: vec![1.0, 1.0] });
        assert!((h.value(&[1.0, 1.0]).unwrap() + 2.0).abs() < 1e-14);
        let hess = h.hessian(&[1.0, 1.0]).unwrap();
        assert!(hess.sub(&Matrix::identity(2)).norm_inf() < 1e-14);

        let h = EntropyDensity::new(EntropyKind::Boltzmann { pi: vec![1.0, 2.0] });
        let e = core::f64::consts::E;
        assert!((h.value(&[1.0, e]).unwrap() + 1.0).abs() < 1e-13);
        let g = h.gradient(&[1.0, e]).unwrap();
        assert!(g[0].abs() < 1e-14);
        assert!((g[1] - 2.0).abs() < 1e-14);
        let hess = h.hessian(&[2.0, 4.0]).unwrap();
        assert!(hess.sub(&Matrix::diag(&[0.5, 0.5])).norm_inf() < 1e-14);

        assert!(matches!(h.value(&[0.0, 1.0]), Err(EntropyError::Domain)));
    }

    #[test]
    fn volume_filling_scalar_hessian() {
        // n = 1, q(s) = s, χ = 0 at u = 1/2: h'' = 1/u₁ + 1/u₀ = 4.
        let h = EntropyDensity::new(EntropyKind::VolumeFilling {
            gamma: 1.0,
            chi: Chi::None,
            lower: 0.5,
        });
        let hess = h.hessian(&[0.5]).unwrap();
        assert!((hess[(0, 0)] - 4.0).abs() < 1e-13);
        fd_check(&h, &[0.3]);
    }

    #[test]
    fn volume_filling_known_inverse_hessian() {
        // For n = 2, q(s) = s, χ = 0 the inverse Hessian is
        // [[u₁(u₂+u₀), −u₁u₂], [−u₁u₂, u₂(u₁+u₀)]].
        let h = EntropyDensity::new(EntropyKind::VolumeFilling {
            gamma: 1.0,
            chi: Chi::None,
            lower: 0.5,
        });
        let u = [0.3, 0.25];
        let u0 = 1.0 - u[0] - u[1];
        let inv = h.hessian(&u).unwrap().inverse().unwrap();
        let expected = Matrix::from_rows(
            2,
            &[
                u[0] * (u[1] + u0),
                -u[0] * u[1],
                -u[0] * u[1],
                u[1] * (u[0] + u0),
            ],
        );
        assert!(inv.sub(&expected).norm_inf() < 1e-12);
    }

    #[test]
    fn volume_filling_chi_gradients_consistent() {
        let c = Matrix::from_rows(2, &[0.5, 0.2, 0.2, 0.5]);
        let h = EntropyDensity::new(EntropyKind::VolumeFilling {
            gamma: 2.0,
            chi: Chi::Quadratic(c),
            lower: 0.5,
        });
        fd_check(&h, &[0.2, 0.35]);
    }

    #[test]
    fn separable_log_chi_consistent() {
        let h = EntropyDensity::new(EntropyKind::VolumeFilling {
            gamma: 1.5,
            chi: Chi::SeparableLog {
                beta: vec![0.5, 1.0],
                s: vec![1.0, 2.0],
            },
            lower: 0.5,
        });
        fd_check(&h, &[0.25, 0.3]);
    }

    #[test]
    fn quadratic_consistent() {
        let h = EntropyDensity::new(EntropyKind::Quadratic {
            h: Matrix::from_rows(2, &[0.5, -1.0 / 3.0, -1.0 / 3.0, 7.0 / 12.0]),
        });
        fd_check(&h, &[1.4, 0.6]);
    }

    #[test]
    fn separable_parts_closed_forms() {
        // h'' = 1 gives h = (x − x*)²/2; h'' = 1/x gives x ln x type terms.
        let h = EntropyDensity::new(EntropyKind::Separable {
            parts: vec![Func1::Const(1.0), Func1::Recip(1.0)],
            star: vec![1.0, 1.0],
        });
        assert!((h.value(&[3.0, 1.0]).unwrap() - 2.0).abs() < 1e-13);
        fd_check(&h, &[0.8, 2.5]);
    }

    #[test]
    fn separable_abs_ratio_quadrature() {
        // h'' = |1/x| on x > 0 matches Recip(1).
        let quad = EntropyDensity::new(EntropyKind::Separable {
            parts: vec![Func1::AbsRatio {
                num: Poly1::constant(1.0),
                den: Poly1::new(vec![0.0, 1.0]),
            }],
            star: vec![1.0],
        });
        let closed = EntropyDensity::new(EntropyKind::Separable {
            parts: vec![Func1::Recip(1.0)],
            star: vec![1.0],
        });
        for x in [0.4, 0.9, 1.7, 2.6] {
            let a = quad.value(&[x]).unwrap();
            let b = closed.value(&[x]).unwrap();
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
            let ga = quad.gradient(&[x]).unwrap()[0];
            let gb = closed.gradient(&[x]).unwrap()[0];
            assert!((ga - gb).abs() < 1e-9);
        }
    }

    #[test]
    fn potential_consistent() {
        let pressures = Pressures::Affine {
            a0: vec![0.0, 0.0],
            a: Matrix::from_rows(2, &[2.0, 1.0, 1.0, 2.0]),
        };
        let h = EntropyDensity::new(EntropyKind::Potential {
            pi: vec![1.0, 1.0],
            reference: vec![0.5, 0.5],
            pressures,
        });
        fd_check(&h, &[1.2, 0.7]);
    }
}
