use alloc::format;
use alloc::string::String;
use alloc::vec;

use crate::ellipticity::{ne_tol, normal_ellipticity};
use crate::linalg::{symmetric_eigenvalues, Matrix};
use crate::lyapunov::solve_lyapunov;
use crate::models::{Family, ModelSpec};
use crate::poly::Poly1;
use crate::Verdict;

use super::density::{Chi, EntropyDensity, EntropyKind, Func1};
use super::EntropyError;

/// Fixed lower limit of the `∫ ln q` block in volume-filling densities; it
/// shifts the density by a constant and cannot affect any verdict.
pub const VOLUME_FILLING_LOWER: f64 = 0.5;

/// Boltzmann density `h(u) = Σᵢ πᵢuᵢ(ln uᵢ − 1)` for positive weights.
pub fn boltzmann_entropy(pi: &[f64]) -> Result<EntropyDensity, EntropyError> {
    if pi.is_empty() || pi.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
        return Err(EntropyError::ContractViolation(String::from(
            "detailed-balance weights must be strictly positive",
        )));
    }
    Ok(EntropyDensity::new(EntropyKind::Boltzmann {
        pi: pi.to_vec(),
    }))
}

/// Quadratic density `h(u) = ½uᵀHu` with `H` solving `HA + AᵀH = I` for a
/// constant normally elliptic `A`; then `h''A = HA` has symmetric part `I/2`
/// and hence positive-definiteness margin `1/2`.
pub fn quadratic_entropy_from_lyapunov(a: &Matrix) -> Result<EntropyDensity, EntropyError> {
    let (verdict, min_re) = normal_ellipticity(a, ne_tol(a))?;
    if verdict != Verdict::Pass {
        return Err(EntropyError::NotNormallyElliptic {
            min_real_part: min_re,
        });
    }
    let h = solve_lyapunov(a, &Matrix::identity(a.n()))?;
    Ok(EntropyDensity::new(EntropyKind::Quadratic { h }))
}

/// Volume-filling density
/// `h(u) = Σᵢ uᵢ(ln uᵢ − 1) + ∫_a^{u₀} ln q(s) ds + χ(u)` with `q(s) = s^γ`.
///
/// Applies to the volume-filling families: the quadratic-χ family directly
/// (requires `C` positive semidefinite), and the separable family when all
/// `γᵢ` agree, in which case `χᵢ' = ln pᵢ`.
pub fn volume_filling_entropy(model: &ModelSpec) -> Result<EntropyDensity, EntropyError> {
    match model.family() {
        Family::VolumeFillingChi { gamma, c } => {
            let eigs = symmetric_eigenvalues(c);
            if eigs[0] < -1e-12 * c.norm_inf().max(1.0) {
                return Err(EntropyError::ContractViolation(String::from(
                    "chi matrix must be positive semidefinite (convex potential)",
                )));
            }
            Ok(EntropyDensity::new(EntropyKind::VolumeFilling {
                gamma: *gamma,
                chi: Chi::Quadratic(c.clone()),
                lower: VOLUME_FILLING_LOWER,
            }))
        }
        Family::VolumeFillingSeparable { beta, s, gamma } => {
            let g0 = gamma[0];
            if gamma.iter().any(|&g| (g - g0).abs() > 1e-12) {
                return Err(EntropyError::NotApplicable(String::from(
                    "separable volume filling needs a common exponent gamma for this density",
                )));
            }
            Ok(EntropyDensity::new(EntropyKind::VolumeFilling {
                gamma: g0,
                chi: Chi::SeparableLog {
                    beta: beta.clone(),
                    s: s.clone(),
                },
                lower: VOLUME_FILLING_LOWER,
            }))
        }
        other => Err(EntropyError::NotApplicable(format!(
            "volume-filling density undefined for family {other:?}"
        ))),
    }
}

/// Potential-reconstructed density with `∂h/∂uᵢ = πᵢpᵢ(u)`.
///
/// Requires the weighted pressure field to be curl-free
/// (`πᵢ∂pᵢ/∂uⱼ = πⱼ∂pⱼ/∂uᵢ`), which is checked at the given samples; the
/// value is the line integral from `reference` along straight paths, exact
/// for polynomial pressures. Convexity is *not* assumed here — an indefinite
/// reconstruction must surface as a failed verdict, not a crash.
pub fn potential_entropy(
    model: &ModelSpec,
    pi: &[f64],
    reference: &[f64],
    samples: &[&[f64]],
) -> Result<EntropyDensity, EntropyError> {
    if pi.len() != model.n() || pi.iter().any(|&p| !(p > 0.0)) {
        return Err(EntropyError::ContractViolation(String::from(
            "weights must be positive and match the species count",
        )));
    }
    if !model.contains(reference) {
        return Err(EntropyError::ContractViolation(String::from(
            "reference point must lie inside the domain",
        )));
    }
    let pressures = model.pressures()?;
    let n = model.n();
    for &u in samples {
        let q = model.pressure_jacobian(u)?;
        let mut defect = 0.0_f64;
        let mut scale = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let w = pi[i] * q[(i, j)];
                scale = scale.max(w.abs());
                if j > i {
                    defect = defect.max((w - pi[j] * q[(j, i)]).abs());
                }
            }
        }
        if defect > 1e-9 * scale.max(1.0) {
            return Err(EntropyError::NotClosed { defect });
        }
    }
    Ok(EntropyDensity::new(EntropyKind::Potential {
        pi: pi.to_vec(),
        reference: reference.to_vec(),
        pressures,
    }))
}

/// Separable two-species density for diffusion matrices with off-diagonal
/// entries `b₁(u₁)b₂(u₂)` and `c₁(u₁)c₂(u₂)`: symmetry of `h''A` forces
/// `h₁'' = |c₁/b₁|` and `h₂'' = |b₂/c₂|` up to one overall constant, fixed
/// to 1.
///
/// The factors must be nonvanishing with `b₁c₁` of constant sign on the
/// scanned interval, otherwise no such density exists.
pub fn separable_entropy_2species(
    b1: &Poly1,
    b2: &Poly1,
    c1: &Poly1,
    c2: &Poly1,
    interval: (f64, f64),
    star: (f64, f64),
) -> Result<EntropyDensity, EntropyError> {
    let (lo, hi) = interval;
    if !(lo < hi) {
        return Err(EntropyError::ContractViolation(String::from(
            "empty scan interval",
        )));
    }
    let grid = 257;
    let mut sign = 0.0_f64;
    for k in 0..grid {
        let x = lo + (hi - lo) * k as f64 / (grid - 1) as f64;
        let (vb1, vb2, vc1, vc2) = (b1.eval(x), b2.eval(x), c1.eval(x), c2.eval(x));
        if vb1 == 0.0 || vb2 == 0.0 || vc1 == 0.0 || vc2 == 0.0 {
            return Err(EntropyError::ContractViolation(format!(
                "factor vanishes at u = {x}"
            )));
        }
        let s = (vb1 * vc1).signum();
        if sign == 0.0 {
            sign = s;
        } else if s != sign {
            return Err(EntropyError::ContractViolation(String::from(
                "sign of b1*c1 changes on the interval",
            )));
        }
    }
    if !(star.0 > lo && star.0 < hi && star.1 > lo && star.1 < hi) {
        return Err(EntropyError::ContractViolation(String::from(
            "star point must lie inside the interval",
        )));
    }
    Ok(EntropyDensity::new(EntropyKind::Separable {
        parts: vec![
            Func1::AbsRatio {
                num: c1.clone(),
                den: b1.clone(),
            },
            Func1::AbsRatio {
                num: b2.clone(),
                den: c2.clone(),
            },
        ],
        star: vec![star.0, star.1],
    }))
}

/// The stabilized chemotaxis density `h(u) = u₁(ln u₁ − 1) + u₂²/(2δ)`,
/// whose Hessian `diag(1/u₁, 1/δ)` inverts the diagonal factor of the
/// Keller–Segel diffusion matrix.
pub fn keller_segel_entropy(delta: f64) -> Result<EntropyDensity, EntropyError> {
    if !(delta > 0.0) {
        return Err(EntropyError::ContractViolation(String::from(
            "delta must be positive",
        )));
    }
    Ok(EntropyDensity::new(EntropyKind::Separable {
        parts: vec![Func1::Recip(1.0), Func1::Const(1.0 / delta)],
        star: vec![1.0, 1.0],
    }))
}

/// Fluid second-entropy weights: for linear pressures with symmetric
/// weighted coefficients the potential density is the explicit quadratic
/// `h(u) = ½Σᵢⱼ πᵢaᵢⱼuᵢuⱼ`. Exposed as a helper for tests and reports.
pub fn fluid_quadratic_closed_form(pi: &[f64], a: &Matrix, u: &[f64]) -> f64 {
    let n = a.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += pi[i] * a[(i, j)] * u[i] * u[j];
        }
    }
    0.5 * total
}
