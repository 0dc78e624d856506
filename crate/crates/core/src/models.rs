//! Catalog of parametric diffusion-matrix families.
//!
//! Each family exposes its diffusion matrix `A(u)` with analytically
//! computed partial derivatives, the pressure/flux functions where the
//! family has them, and a deterministic low-discrepancy domain sampler.
//!
//! Families over the positive orthant use transition rates `pᵢ`; the
//! volume-filling families live on the Gibbs simplex
//! `{u > 0 : Σuᵢ < 1}` where `u₀ = 1 − Σuᵢ` is the free-space fraction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::Matrix;
use crate::poly::Poly;

/// Upper bound of the positive-orthant sampling box; samples live in
/// `(margin, ORTHANT_HI)ⁿ`.
pub const ORTHANT_HI: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    PositiveOrthant,
    GibbsSimplex,
}

/// A state-space point validated against a model's domain and margin.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainPoint {
    u: Vec<f64>,
}

impl DomainPoint {
    pub fn coords(&self) -> &[f64] {
        &self.u
    }
}

#[derive(Debug, Clone)]
pub enum ModelError {
    BadParams(String),
    OutsideDomain,
    /// The family does not expose pressure functions.
    NoPressures,
    InfeasibleMargin,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::BadParams(msg) => write!(f, "invalid model parameters: {msg}"),
            ModelError::OutsideDomain => write!(f, "point lies outside the model domain"),
            ModelError::NoPressures => write!(f, "model family has no pressure functions"),
            ModelError::InfeasibleMargin => write!(f, "margin leaves no interior to sample"),
        }
    }
}

impl core::error::Error for ModelError {}

/// Family-specific coefficient blocks.
#[derive(Debug, Clone)]
pub enum Family {
    /// Population model with linear transition rates
    /// `pᵢ(u) = aᵢ₀ + Σₖ aᵢₖuₖ`, so `Aᵢⱼ = δᵢⱼ pᵢ(u) + aᵢⱼuᵢ`.
    SktLinear { a0: Vec<f64>, a: Matrix },
    /// Power-law transition rates `pᵢ(u) = aᵢ₀ + Σⱼ aᵢⱼ uⱼˢ` with `0 < s ≤ 1`.
    SktPower { s: f64, a0: Vec<f64>, a: Matrix },
    /// Volume filling with separable rates `pᵢ(uᵢ) = βᵢ + uᵢ^{sᵢ}` and
    /// `qᵢ(u₀) = u₀^{γᵢ}`.
    VolumeFillingSeparable {
        beta: Vec<f64>,
        s: Vec<f64>,
        gamma: Vec<f64>,
    },
    /// Volume filling with a common `q(u₀) = u₀^γ` and exponential rates
    /// `pᵢ = exp((Cu)ᵢ)` derived from the quadratic potential `χ = ½uᵀCu`.
    VolumeFillingChi { gamma: f64, c: Matrix },
    /// Fluid mixture with linear partial pressures `pᵢ = Σⱼ aᵢⱼuⱼ`, so
    /// `A(u) = diag(u)·a`.
    FluidLinear { a: Matrix },
    /// Fluid mixture with polynomial partial pressures.
    FluidPoly { p: Vec<Poly> },
    /// Two-species chemotaxis system with stabilizing cross-diffusion of
    /// strength `δ`; `A(u) = [[1, −u₁], [δ, 1]]`.
    KellerSegel { delta: f64 },
    /// Three-species system `∂ₜuᵢ = ½Δ(uᵢ² + u_{i+2 mod 3}²)` with
    /// `A(u) = [[u₁,0,u₃],[u₁,u₂,0],[0,u₂,u₃]]`.
    CubicExample,
    /// `∂ₜuᵢ = ΔFᵢ(u)` with polynomial fluxes; `Aᵢⱼ = ∂Fᵢ/∂uⱼ`.
    DeltaFPoly { f: Vec<Poly> },
}

/// A validated model: family coefficients, species count, domain, and the
/// interior margin used for sampling and initial data.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    family: Family,
    n: usize,
    domain: Domain,
    margin: f64,
}

impl ModelSpec {
    pub fn new(family: Family, n: usize, margin: f64) -> Result<ModelSpec, ModelError> {
        if n == 0 || n > crate::linalg::MAX_DIM {
            return Err(ModelError::BadParams(format!(
                "species count {n} outside 1..=16"
            )));
        }
        if !(margin > 0.0 && margin < 0.4) {
            return Err(ModelError::BadParams(format!(
                "margin {margin} outside (0, 0.4)"
            )));
        }
        let domain = match &family {
            Family::VolumeFillingSeparable { .. } | Family::VolumeFillingChi { .. } => {
                Domain::GibbsSimplex
            }
            _ => Domain::PositiveOrthant,
        };
        validate_family(&family, n)?;
        Ok(ModelSpec {
            family,
            n,
            domain,
            margin,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// Short name for reports.
    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::SktLinear { .. } => "skt_linear",
            Family::SktPower { .. } => "skt_power",
            Family::VolumeFillingSeparable { .. } => "volume_filling_separable",
            Family::VolumeFillingChi { .. } => "volume_filling_chi",
            Family::FluidLinear { .. } => "fluid_linear",
            Family::FluidPoly { .. } => "fluid_poly",
            Family::KellerSegel { .. } => "keller_segel",
            Family::CubicExample => "cubic_example",
            Family::DeltaFPoly { .. } => "delta_f_poly",
        }
    }

    /// Conventions worth surfacing in reports.
    pub fn notes(&self) -> Vec<String> {
        match self.family {
            Family::KellerSegel { .. } => vec![String::from(
                "keller_segel: A(u) = [[1, -u1], [delta, 1]], the reading consistent with \
                 eigenvalues 1 +/- i*sqrt(delta*u1) and the diagonal factorization; reaction \
                 terms are dropped",
            )],
            _ => Vec::new(),
        }
    }

    /// Membership in the open domain (no margin).
    pub fn contains(&self, u: &[f64]) -> bool {
        self.contains_with_margin(u, 0.0)
    }

    /// Membership with all coordinates (and `u₀` on the simplex) at least
    /// `margin` inside.
    pub fn contains_with_margin(&self, u: &[f64], margin: f64) -> bool {
        if u.len() != self.n || u.iter().any(|x| !x.is_finite()) {
            return false;
        }
        let interior = u.iter().all(|&x| x > margin);
        match self.domain {
            Domain::PositiveOrthant => interior,
            Domain::GibbsSimplex => interior && 1.0 - u.iter().sum::<f64>() > margin,
        }
    }

    /// Validate a raw coordinate vector as a domain point with this model's
    /// configured margin.
    pub fn point(&self, u: &[f64]) -> Result<DomainPoint, ModelError> {
        if self.contains_with_margin(u, self.margin) {
            Ok(DomainPoint { u: u.to_vec() })
        } else {
            Err(ModelError::OutsideDomain)
        }
    }

    /// Exact evaluation of the family's diffusion matrix at `u`.
    pub fn diffusion_matrix(&self, u: &[f64]) -> Result<Matrix, ModelError> {
        if !self.contains(u) {
            return Err(ModelError::OutsideDomain);
        }
        let n = self.n;
        Ok(match &self.family {
            Family::SktLinear { a0, a } => Matrix::from_fn(n, |i, j| {
                let p_i = a0[i] + (0..n).map(|k| a[(i, k)] * u[k]).sum::<f64>();
                let diag = if i == j { p_i } else { 0.0 };
                diag + a[(i, j)] * u[i]
            }),
            Family::SktPower { s, a0, a } => Matrix::from_fn(n, |i, j| {
                let p_i = a0[i] + (0..n).map(|k| a[(i, k)] * u[k].powf(*s)).sum::<f64>();
                let diag = if i == j { p_i } else { 0.0 };
                diag + u[i] * s * a[(i, j)] * u[j].powf(s - 1.0)
            }),
            Family::VolumeFillingSeparable { beta, s, gamma } => {
                let u0 = free_space(u);
                Matrix::from_fn(n, |i, j| {
                    let p = beta[i] + u[i].powf(s[i]);
                    let dp = s[i] * u[i].powf(s[i] - 1.0);
                    let q = u0.powf(gamma[i]);
                    let dq = gamma[i] * u0.powf(gamma[i] - 1.0);
                    let diag = if i == j { p * q + u[i] * q * dp } else { 0.0 };
                    diag + u[i] * p * dq
                })
            }
            Family::VolumeFillingChi { gamma, c } => {
                let u0 = free_space(u);
                let q = u0.powf(*gamma);
                let dq = gamma * u0.powf(gamma - 1.0);
                let p: Vec<f64> = (0..n)
                    .map(|i| (0..n).map(|k| c[(i, k)] * u[k]).sum::<f64>().exp())
                    .collect();
                Matrix::from_fn(n, |i, j| {
                    let diag = if i == j { p[i] * q } else { 0.0 };
                    diag + u[i] * p[i] * dq + u[i] * q * p[i] * c[(i, j)]
                })
            }
            Family::FluidLinear { a } => Matrix::from_fn(n, |i, j| u[i] * a[(i, j)]),
            Family::FluidPoly { p } => Matrix::from_fn(n, |i, j| u[i] * p[i].partial_eval(j, u)),
            Family::KellerSegel { delta } => Matrix::from_rows(2, &[1.0, -u[0], *delta, 1.0]),
            Family::CubicExample => {
                Matrix::from_rows(3, &[u[0], 0.0, u[2], u[0], u[1], 0.0, 0.0, u[1], u[2]])
            }
            Family::DeltaFPoly { f } => Matrix::from_fn(n, |i, j| f[i].partial_eval(j, u)),
        })
    }

    /// The pressure (or flux) functions, for families that have them.
    pub fn pressures(&self) -> Result<Pressures, ModelError> {
        Ok(match &self.family {
            Family::SktLinear { a0, a } => Pressures::Affine {
                a0: a0.clone(),
                a: a.clone(),
            },
            Family::SktPower { s, a0, a } => Pressures::Power {
                a0: a0.clone(),
                a: a.clone(),
                s: *s,
            },
            Family::FluidLinear { a } => Pressures::Affine {
                a0: vec![0.0; self.n],
                a: a.clone(),
            },
            Family::FluidPoly { p } => Pressures::Poly(p.clone()),
            Family::DeltaFPoly { f } => Pressures::Poly(f.clone()),
            _ => return Err(ModelError::NoPressures),
        })
    }

    /// Values `pᵢ(u)`.
    pub fn pressure_values(&self, u: &[f64]) -> Result<Vec<f64>, ModelError> {
        if !self.contains(u) {
            return Err(ModelError::OutsideDomain);
        }
        Ok(self.pressures()?.values(u))
    }

    /// Exact Jacobian `Q = (∂pᵢ/∂uⱼ)`.
    pub fn pressure_jacobian(&self, u: &[f64]) -> Result<Matrix, ModelError> {
        if !self.contains(u) {
            return Err(ModelError::OutsideDomain);
        }
        Ok(self.pressures()?.jacobian(u))
    }

    /// Deterministic low-discrepancy sample of the domain interior with the
    /// given margin; the first point is always the centroid.
    pub fn sample_domain(
        &self,
        count: usize,
        margin: f64,
        seed: u64,
    ) -> Result<Vec<DomainPoint>, ModelError> {
        assert!(count >= 1, "at least one sample required");
        if !(margin > 0.0 && margin < 0.4) {
            return Err(ModelError::InfeasibleMargin);
        }
        let n = self.n;
        match self.domain {
            Domain::PositiveOrthant => {
                if margin >= ORTHANT_HI {
                    return Err(ModelError::InfeasibleMargin);
                }
                let centroid = vec![0.5 * (margin + ORTHANT_HI); n];
                let seq = RSequence::new(n, seed);
                let mut out = Vec::with_capacity(count);
                out.push(DomainPoint { u: centroid });
                for k in 1..count {
                    let x = seq.point(k as u64);
                    let u: Vec<f64> = x
                        .iter()
                        .map(|&t| margin + (ORTHANT_HI - margin) * t)
                        .collect();
                    out.push(DomainPoint { u });
                }
                Ok(out)
            }
            Domain::GibbsSimplex => {
                let shrink = 1.0 - (n as f64 + 1.0) * margin;
                if shrink <= 0.0 {
                    return Err(ModelError::InfeasibleMargin);
                }
                let centroid = vec![1.0 / (n as f64 + 1.0); n];
                let seq = RSequence::new(n + 1, seed);
                let mut out = Vec::with_capacity(count);
                out.push(DomainPoint { u: centroid });
                for k in 1..count {
                    let x = seq.point(k as u64);
                    // Normalized exponential spacings give a point of the
                    // open solid simplex; the last coordinate plays u₀.
                    let y: Vec<f64> = x
                        .iter()
                        .map(|&t| -(t.clamp(1e-12, 1.0 - 1e-12)).ln())
                        .collect();
                    let total: f64 = y.iter().sum();
                    let u: Vec<f64> = (0..n).map(|i| margin + shrink * y[i] / total).collect();
                    out.push(DomainPoint { u });
                }
                Ok(out)
            }
        }
    }
}

fn free_space(u: &[f64]) -> f64 {
    1.0 - u.iter().sum::<f64>()
}

fn validate_family(family: &Family, n: usize) -> Result<(), ModelError> {
    let check_len = |len: usize, what: &str| {
        if len != n {
            Err(ModelError::BadParams(format!(
                "{what} must have {n} entries, got {len}"
            )))
        } else {
            Ok(())
        }
    };
    let check_nonneg = |vals: &[f64], what: &str| {
        if vals.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            Err(ModelError::BadParams(format!(
                "{what} entries must be finite and nonnegative"
            )))
        } else {
            Ok(())
        }
    };
    match family {
        Family::SktLinear { a0, a } => {
            check_len(a0.len(), "a0")?;
            check_len(a.n(), "a")?;
            check_nonneg(a0, "a0")?;
            check_nonneg(a.as_slice(), "a")
        }
        Family::SktPower { s, a0, a } => {
            check_len(a0.len(), "a0")?;
            check_len(a.n(), "a")?;
            check_nonneg(a0, "a0")?;
            check_nonneg(a.as_slice(), "a")?;
            if !(*s > 0.0 && *s <= 1.0) {
                return Err(ModelError::BadParams(format!(
                    "exponent s={s} outside (0, 1]"
                )));
            }
            Ok(())
        }
        Family::VolumeFillingSeparable { beta, s, gamma } => {
            check_len(beta.len(), "beta")?;
            check_len(s.len(), "s")?;
            check_len(gamma.len(), "gamma")?;
            check_nonneg(beta, "beta")?;
            if s.iter().any(|&x| !(x > 0.0)) || gamma.iter().any(|&x| !(x > 0.0)) {
                return Err(ModelError::BadParams(String::from(
                    "exponents s and gamma must be positive",
                )));
            }
            Ok(())
        }
        Family::VolumeFillingChi { gamma, c } => {
            check_len(c.n(), "c")?;
            if !(*gamma > 0.0) {
                return Err(ModelError::BadParams(format!(
                    "gamma={gamma} must be positive"
                )));
            }
            if c.symmetry_defect() > 1e-12 * c.norm_inf().max(1.0) {
                return Err(ModelError::BadParams(String::from(
                    "chi matrix c must be symmetric",
                )));
            }
            Ok(())
        }
        Family::FluidLinear { a } => {
            check_len(a.n(), "a")?;
            check_nonneg(a.as_slice(), "a")
        }
        Family::FluidPoly { p } => {
            check_len(p.len(), "p")?;
            for (i, poly) in p.iter().enumerate() {
                if poly.nvars() != n {
                    return Err(ModelError::BadParams(format!(
                        "pressure {i} has {} variables, expected {n}",
                        poly.nvars()
                    )));
                }
            }
            Ok(())
        }
        Family::KellerSegel { delta } => {
            if n != 2 {
                return Err(ModelError::BadParams(String::from(
                    "keller_segel requires n = 2",
                )));
            }
            if !(*delta > 0.0) {
                return Err(ModelError::BadParams(format!(
                    "delta={delta} must be positive"
                )));
            }
            Ok(())
        }
        Family::CubicExample => {
            if n != 3 {
                return Err(ModelError::BadParams(String::from(
                    "cubic_example requires n = 3",
                )));
            }
            Ok(())
        }
        Family::DeltaFPoly { f } => {
            check_len(f.len(), "f")?;
            for (i, poly) in f.iter().enumerate() {
                if poly.nvars() != n {
                    return Err(ModelError::BadParams(format!(
                        "flux {i} has {} variables, expected {n}",
                        poly.nvars()
                    )));
                }
            }
            Ok(())
        }
    }
}

/// Pressure field shared between the model catalog and the entropy
/// constructions.
#[derive(Debug, Clone)]
pub enum Pressures {
    /// `pᵢ(u) = a0ᵢ + Σⱼ aᵢⱼuⱼ`
    Affine { a0: Vec<f64>, a: Matrix },
    /// `pᵢ(u) = a0ᵢ + Σⱼ aᵢⱼ uⱼˢ`
    Power { a0: Vec<f64>, a: Matrix, s: f64 },
    /// General polynomials.
    Poly(Vec<Poly>),
}

impl Pressures {
    pub fn len(&self) -> usize {
        match self {
            Pressures::Affine { a0, .. } | Pressures::Power { a0, .. } => a0.len(),
            Pressures::Poly(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn values(&self, u: &[f64]) -> Vec<f64> {
        let n = self.len();
        match self {
            Pressures::Affine { a0, a } => (0..n)
                .map(|i| a0[i] + (0..n).map(|j| a[(i, j)] * u[j]).sum::<f64>())
                .collect(),
            Pressures::Power { a0, a, s } => (0..n)
                .map(|i| a0[i] + (0..n).map(|j| a[(i, j)] * u[j].powf(*s)).sum::<f64>())
                .collect(),
            Pressures::Poly(p) => p.iter().map(|pi| pi.eval(u)).collect(),
        }
    }

    pub fn jacobian(&self, u: &[f64]) -> Matrix {
        let n = self.len();
        match self {
            Pressures::Affine { a, .. } => a.clone(),
            Pressures::Power { a, s, .. } => {
                Matrix::from_fn(n, |i, j| s * a[(i, j)] * u[j].powf(s - 1.0))
            }
            Pressures::Poly(p) => Matrix::from_fn(n, |i, j| p[i].partial_eval(j, u)),
        }
    }

    /// Total polynomial degree, `None` for non-polynomial fields.
    pub fn degree(&self) -> Option<u32> {
        match self {
            Pressures::Affine { .. } => Some(1),
            Pressures::Power { .. } => None,
            Pressures::Poly(p) => Some(p.iter().map(|q| q.degree()).max().unwrap_or(0)),
        }
    }
}

/// Additive-recurrence low-discrepancy sequence (the R_d sequence built on
/// the generalized golden ratio), phase-shifted per dimension by a seeded
/// splitmix64 stream.
struct RSequence {
    alphas: Vec<f64>,
    offsets: Vec<f64>,
}

impl RSequence {
    fn new(dims: usize, seed: u64) -> RSequence {
        // φ_d is the unique real root of x^{d+1} = x + 1.
        let d = dims as f64;
        let mut phi = 1.5_f64;
        for _ in 0..60 {
            phi = (1.0 + phi).powf(1.0 / (d + 1.0));
        }
        let mut alphas = Vec::with_capacity(dims);
        let mut inv = 1.0;
        for _ in 0..dims {
            inv /= phi;
            alphas.push(inv.fract());
        }
        let offsets = (0..dims)
            .map(|j| {
                splitmix64(seed ^ ((j as u64 + 1).wrapping_mul(0xA076_1D64_78BD_642F))) as f64
                    / u64::MAX as f64
            })
            .collect();
        RSequence { alphas, offsets }
    }

    fn point(&self, k: u64) -> Vec<f64> {
        self.alphas
            .iter()
            .zip(self.offsets.iter())
            .map(|(&a, &o)| (o + k as f64 * a).fract())
            .collect()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
