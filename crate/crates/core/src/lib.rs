//! Entropy-structure analysis for cross-diffusion systems.
//!
//! A cross-diffusion system couples the species of a quasilinear parabolic
//! system through a diffusion matrix `A(u)` that is in general neither
//! symmetric nor positive definite. This crate decides whether such a system
//! admits an entropy structure — a strictly convex density `h` with
//! `h''(u) A(u)` positive definite on the state domain — constructs the
//! entropy density where one exists, certifies normal ellipticity of `A(u)`,
//! and verifies discrete entropy decay on a 1D finite-difference grid.
//!
//! The crate is `no_std` (with `alloc`); file formats and the command-line
//! front end live in the companion `crossdiff-cli` crate.
//!
//! Module map:
//! - [`linalg`]: dense matrix kernel (eigenvalues, definiteness, minors,
//!   inertia, norms) for matrices up to 16×16.
//! - [`lyapunov`]: the matrix equation `HA + AᵀH = G` plus an independent
//!   integral oracle.
//! - [`factorize`]: constructive factorizations `A = A₁A₂` with symmetric
//!   positive definite `A₁`.
//! - [`ellipticity`]: normal-ellipticity certificates (spectral,
//!   Routh–Hurwitz, diagonal dominance, model-specific).
//! - [`models`]: the catalog of parametric diffusion-matrix families.
//! - [`entropy`]: detailed balance, entropy-density constructions, structure
//!   verdicts, perturbation bounds.
//! - [`simulate`]: 1D no-flux finite-difference solver tracking discrete
//!   entropy and dissipation.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN,
// which the suggested `x <= 0.0` would silently accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod ellipticity;
pub mod entropy;
pub mod expm;
pub mod factorize;
pub mod linalg;
pub mod lyapunov;
pub mod models;
pub mod poly;
pub mod quad;
pub mod simulate;

pub use linalg::{Inertia, Matrix, Spectrum};
pub use models::ModelSpec;

/// Tri-state outcome for strict-inequality verdicts.
///
/// The underlying conditions are strict (`margin > 0`), so margins within
/// tolerance of zero are reported as `Indeterminate` rather than silently
/// rounded to a boolean. Indeterminate verdicts fail aggregates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl Verdict {
    /// Classify a margin against a tolerance band.
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        if margin > tol {
            Verdict::Pass
        } else if margin < -tol {
            Verdict::Fail
        } else {
            Verdict::Indeterminate
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    /// Conjunction that treats `Indeterminate` as non-pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (Pass, Pass) => Pass,
        }
    }
}

/// Scale-invariant default tolerance: `1e-10 · max(1, scale)`.
pub fn default_tol(scale: f64) -> f64 {
    1e-10 * if scale > 1.0 { scale } else { 1.0 }
}
