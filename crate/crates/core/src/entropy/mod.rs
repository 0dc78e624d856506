//! Entropy structure: detailed balance, entropy-density construction,
//! structure verdicts, and perturbation bounds.
//!
//! An entropy structure for `∂ₜu = div(A(u)∇u)` is a strictly convex density
//! `h` with `h''(u)A(u)` positive definite across the state domain; it yields
//! a Lyapunov functional and the gradient estimates that drive global
//! existence. This module constructs candidate densities by five mechanisms
//! (Boltzmann weights from detailed balance, quadratic densities from a
//! Lyapunov solve, volume-filling densities on the simplex, potential
//! reconstruction of curl-free pressure fields, and separable two-species
//! densities) and then verifies the defining inequality sample by sample.

mod construct;
mod density;
mod detailed_balance;
mod perturbation;
mod verify;

pub use construct::{
    boltzmann_entropy, fluid_quadratic_closed_form, keller_segel_entropy, potential_entropy,
    quadratic_entropy_from_lyapunov, separable_entropy_2species, volume_filling_entropy,
};
pub use density::{Chi, EntropyDensity, EntropyKind, Func1};
pub use detailed_balance::{
    solve_detailed_balance_constant, solve_detailed_balance_pressures, DbViolation, DetailedBalance,
};
pub use perturbation::{
    perturbation_bound_constant, perturbation_bound_symmetric, PerturbationSample,
};
pub use verify::{verify_entropy_structure, SampleRecord, StructureReport, VerifyConfig};

use alloc::string::String;
use core::fmt;

use crate::linalg::{EigError, LuError};
use crate::lyapunov::LyapunovError;
use crate::models::ModelError;
use crate::quad::QuadError;

#[derive(Debug, Clone)]
pub enum EntropyError {
    /// Evaluation outside the density's domain (e.g. `log uᵢ` at `uᵢ ≤ 0`).
    Domain,
    NotNormallyElliptic {
        min_real_part: f64,
    },
    /// The weighted pressure field is not curl-free: no potential exists.
    NotClosed {
        defect: f64,
    },
    /// Construction hypotheses violated (signs, convexity, dimensions).
    ContractViolation(String),
    /// The requested construction does not apply to this model family.
    NotApplicable(String),
    NoBoundAvailable,
    Quad(QuadError),
    Lyapunov(LyapunovError),
    Model(ModelError),
    Eig(EigError),
    Singular(LuError),
}

impl fmt::Display for EntropyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyError::Domain => write!(f, "evaluation point outside the entropy domain"),
            EntropyError::NotNormallyElliptic { min_real_part } => write!(
                f,
                "matrix is not normally elliptic (min real part {min_real_part:.3e})"
            ),
            EntropyError::NotClosed { defect } => write!(
                f,
                "weighted pressure field is not curl-free (defect {defect:.3e})"
            ),
            EntropyError::ContractViolation(msg) => write!(f, "{msg}"),
            EntropyError::NotApplicable(msg) => write!(f, "construction not applicable: {msg}"),
            EntropyError::NoBoundAvailable => write!(f, "no perturbation bound available"),
            EntropyError::Quad(e) => write!(f, "{e}"),
            EntropyError::Lyapunov(e) => write!(f, "{e}"),
            EntropyError::Model(e) => write!(f, "{e}"),
            EntropyError::Eig(e) => write!(f, "{e}"),
            EntropyError::Singular(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EntropyError {}

impl From<QuadError> for EntropyError {
    fn from(e: QuadError) -> Self {
        EntropyError::Quad(e)
    }
}

impl From<LyapunovError> for EntropyError {
    fn from(e: LyapunovError) -> Self {
        EntropyError::Lyapunov(e)
    }
}

impl From<ModelError> for EntropyError {
    fn from(e: ModelError) -> Self {
        EntropyError::Model(e)
    }
}

impl From<EigError> for EntropyError {
    fn from(e: EigError) -> Self {
        EntropyError::Eig(e)
    }
}

impl From<LuError> for EntropyError {
    fn from(e: LuError) -> Self {
        EntropyError::Singular(e)
    }
}
