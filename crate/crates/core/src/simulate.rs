//! 1D finite-difference solver for `∂ₜu = ∂ₓ(A(u)∂ₓu)` with no-flux
//! boundaries, tracking the discrete entropy `H = Δx·Σⱼ h(uⱼ)` and the
//! dissipation `D = Δx·Σ_faces ∇u : h''(ū)A(ū)∇u`.
//!
//! The scheme is conservative explicit Euler: face fluxes
//! `F_{j+1/2} = A(ū_{j+1/2})·(u_{j+1} − u_j)/Δx` with arithmetic face
//! averages, zero flux at the boundary faces, and an adaptive time step
//! `dt = c·Δx²/ρ_max` from the sampled spectral radius, halved when a step
//! would leave the state domain. Rejection instead of clipping keeps mass
//! conservation and the entropy accounting exact.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

// Float methods come from num_traits under no_std; std test builds shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::entropy::{EntropyDensity, EntropyError};
use crate::linalg::{spectral_radius, EigError};
use crate::models::{ModelError, ModelSpec};

/// Relative per-step tolerance for entropy monotonicity diagnostics.
pub const MONOTONICITY_TOL: f64 = 1e-8;

/// Initial profile: per-species constant plus a sinusoidal bump,
/// `uᵢ(x) = baseᵢ + ampᵢ·cos(πx/L)`, compatible with no-flux boundaries.
#[derive(Debug, Clone)]
pub struct InitialProfile {
    pub base: Vec<f64>,
    pub amplitude: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub cells: usize,
    pub length: f64,
    pub initial: InitialProfile,
    pub t_final: f64,
    pub safety: f64,
    pub stride: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    Completed,
    /// Time step underflowed after repeated rejections.
    Stalled,
    /// State left the finite range.
    Diverged,
}

/// One recorded time level.
#[derive(Debug, Clone)]
pub struct Frame {
    pub t: f64,
    pub entropy: f64,
    pub dissipation: f64,
    /// Discrete entropy-balance residual `(H₊ − H)/dt + D` of the step
    /// ending at this frame (zero for the initial frame).
    pub residual: f64,
    pub mass: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    /// Cell states, row-major `cells × species`.
    pub state: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SimResult {
    pub frames: Vec<Frame>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub termination: Termination,
    /// Largest `|residual|` over all accepted steps.
    pub max_residual: f64,
    /// Largest relative entropy increase `(H₊ − H)/(1 + |H|)` over steps.
    pub max_entropy_uplift: f64,
    /// First step whose uplift exceeded [`MONOTONICITY_TOL`]:
    /// `(step index, time, relative uplift)`.
    pub first_uplift_violation: Option<(usize, f64, f64)>,
}

#[derive(Debug, Clone)]
pub enum SimError {
    Config(String),
    Model(ModelError),
    Entropy(EntropyError),
    Eig(EigError),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::Config(msg) => write!(f, "invalid simulation config: {msg}"),
            SimError::Model(e) => write!(f, "{e}"),
            SimError::Entropy(e) => write!(f, "{e}"),
            SimError::Eig(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SimError {}

impl From<ModelError> for SimError {
    fn from(e: ModelError) -> Self {
        SimError::Model(e)
    }
}

impl From<EntropyError> for SimError {
    fn from(e: EntropyError) -> Self {
        SimError::Entropy(e)
    }
}

impl From<EigError> for SimError {
    fn from(e: EigError) -> Self {
        SimError::Eig(e)
    }
}

/// A step that would leave the state domain by more than half the margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRejected;

/// Grid-coupled evaluator for one model/entropy pair.
pub struct Simulator<'a> {
    model: &'a ModelSpec,
    entropy: &'a EntropyDensity,
    cells: usize,
    dx: f64,
}

impl<'a> Simulator<'a> {
    pub fn new(
        model: &'a ModelSpec,
        entropy: &'a EntropyDensity,
        cells: usize,
        length: f64,
    ) -> Result<Self, SimError> {
        if cells < 8 {
            return Err(SimError::Config(String::from("at least 8 cells required")));
        }
        if !(length > 0.0) {
            return Err(SimError::Config(String::from("length must be positive")));
        }
        Ok(Simulator {
            model,
            entropy,
            cells,
            dx: length / cells as f64,
        })
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    fn n(&self) -> usize {
        self.model.n()
    }

    fn cell<'s>(&self, state: &'s [f64], j: usize) -> &'s [f64] {
        &state[j * self.n()..(j + 1) * self.n()]
    }

    /// Conservative explicit update. Rejects (caller halves `dt`) when any
    /// post-step cell leaves the domain by more than half the margin.
    pub fn step(&self, state: &[f64], dt: f64) -> Result<Vec<f64>, StepRejected> {
        let n = self.n();
        let j_cells = self.cells;
        let mut new_state = state.to_vec();
        let mut flux_left = vec![0.0; n]; // zero flux at the left boundary

        for j in 0..j_cells {
            let flux_right = if j + 1 < j_cells {
                self.face_flux(self.cell(state, j), self.cell(state, j + 1))
            } else {
                vec![0.0; n]
            };
            let target = &mut new_state[j * n..(j + 1) * n];
            for i in 0..n {
                target[i] += dt / self.dx * (flux_right[i] - flux_left[i]);
            }
            flux_left = flux_right;
        }

        let guard = 0.5 * self.model.margin();
        for j in 0..j_cells {
            let cell = self.cell(&new_state, j);
            if cell.iter().any(|x| !x.is_finite()) || !self.model.contains_with_margin(cell, guard)
            {
                return Err(StepRejected);
            }
        }
        Ok(new_state)
    }

    /// `F_{j+1/2} = A(ū)·(u_R − u_L)/Δx` at an interior face.
    fn face_flux(&self, left: &[f64], right: &[f64]) -> Vec<f64> {
        let n = self.n();
        let avg: Vec<f64> = (0..n).map(|i| 0.5 * (left[i] + right[i])).collect();
        let grad: Vec<f64> = (0..n).map(|i| (right[i] - left[i]) / self.dx).collect();
        let a = self
            .model
            .diffusion_matrix(&avg)
            .expect("face average of interior cells is interior");
        a.mul_vec(&grad)
    }

    /// Discrete entropy `Δx·Σⱼ h(uⱼ)`.
    pub fn total_entropy(&self, state: &[f64]) -> Result<f64, EntropyError> {
        let mut total = 0.0;
        for j in 0..self.cells {
            total += self.entropy.value(self.cell(state, j))?;
        }
        Ok(total * self.dx)
    }

    /// Discrete dissipation `Δx·Σ_faces gᵀ·h''(ū)A(ū)·g` with
    /// `g = (u_R − u_L)/Δx`.
    pub fn dissipation(&self, state: &[f64]) -> Result<f64, SimError> {
        let n = self.n();
        let mut total = 0.0;
        for j in 0..self.cells - 1 {
            let left = self.cell(state, j);
            let right = self.cell(state, j + 1);
            let avg: Vec<f64> = (0..n).map(|i| 0.5 * (left[i] + right[i])).collect();
            let grad: Vec<f64> = (0..n).map(|i| (right[i] - left[i]) / self.dx).collect();
            let a = self.model.diffusion_matrix(&avg)?;
            let hess = self.entropy.hessian(&avg)?;
            let m = hess.matmul(&a);
            let mg = m.mul_vec(&grad);
            total += grad.iter().zip(mg.iter()).map(|(x, y)| x * y).sum::<f64>();
        }
        Ok(total * self.dx)
    }

    /// Max spectral radius of `A(u)` over the cells, for the CFL step size.
    pub fn max_spectral_radius(&self, state: &[f64]) -> Result<f64, SimError> {
        let mut rho: f64 = 0.0;
        for j in 0..self.cells {
            let a = self.model.diffusion_matrix(self.cell(state, j))?;
            rho = rho.max(spectral_radius(&a)?);
        }
        Ok(rho.max(f64::MIN_POSITIVE))
    }

    pub fn initial_state(
        &self,
        profile: &InitialProfile,
        length: f64,
    ) -> Result<Vec<f64>, SimError> {
        let n = self.n();
        if profile.base.len() != n || profile.amplitude.len() != n {
            return Err(SimError::Config(String::from(
                "profile must list one base and amplitude per species",
            )));
        }
        let mut state = vec![0.0; self.cells * n];
        for j in 0..self.cells {
            let x = (j as f64 + 0.5) * self.dx;
            let phase = (core::f64::consts::PI * x / length).cos();
            for i in 0..n {
                state[j * n + i] = profile.base[i] + profile.amplitude[i] * phase;
            }
        }
        for j in 0..self.cells {
            if !self
                .model
                .contains_with_margin(self.cell(&state, j), self.model.margin())
            {
                return Err(SimError::Config(String::from(
                    "initial profile leaves the domain interior at some cell",
                )));
            }
        }
        Ok(state)
    }
}

/// Run a full simulation, recording every `stride`-th accepted step plus the
/// initial and final states.
pub fn run(
    model: &ModelSpec,
    entropy: &EntropyDensity,
    config: &SimConfig,
) -> Result<SimResult, SimError> {
    if !(config.safety > 0.0 && config.safety < 1.0) {
        return Err(SimError::Config(String::from(
            "safety factor outside (0,1)",
        )));
    }
    if !(config.t_final > 0.0) {
        return Err(SimError::Config(String::from("t_final must be positive")));
    }
    if config.stride == 0 {
        return Err(SimError::Config(String::from("stride must be at least 1")));
    }
    let sim = Simulator::new(model, entropy, config.cells, config.length)?;
    let mut state = sim.initial_state(&config.initial, config.length)?;

    let mut frames = Vec::new();
    let mut h_prev = sim.total_entropy(&state)?;
    frames.push(make_frame(
        &sim,
        0.0,
        &state,
        h_prev,
        sim.dissipation(&state)?,
        0.0,
    ));

    let mut t = 0.0;
    let mut accepted = 0usize;
    let mut rejected = 0usize;
    let mut max_residual = 0.0_f64;
    let mut max_uplift = f64::NEG_INFINITY;
    let mut first_violation = None;
    let mut termination = Termination::Completed;

    while t < config.t_final * (1.0 - 1e-12) {
        let rho = sim.max_spectral_radius(&state)?;
        let mut dt = (config.safety * sim.dx * sim.dx / rho).min(config.t_final - t);
        let d_prev = sim.dissipation(&state)?;

        let mut halvings = 0;
        let new_state = loop {
            match sim.step(&state, dt) {
                Ok(s) => break Some(s),
                Err(StepRejected) => {
                    rejected += 1;
                    halvings += 1;
                    if halvings > 20 {
                        break None;
                    }
                    dt *= 0.5;
                }
            }
        };
        let Some(new_state) = new_state else {
            termination = Termination::Stalled;
            break;
        };
        if new_state.iter().any(|x| !x.is_finite()) {
            termination = Termination::Diverged;
            break;
        }

        let h_new = match sim.total_entropy(&new_state) {
            Ok(v) if v.is_finite() => v,
            _ => {
                termination = Termination::Diverged;
                break;
            }
        };
        accepted += 1;
        t += dt;

        let residual = (h_new - h_prev) / dt + d_prev;
        max_residual = max_residual.max(residual.abs());
        let uplift = (h_new - h_prev) / (1.0 + h_prev.abs());
        max_uplift = max_uplift.max(uplift);
        if uplift > MONOTONICITY_TOL && first_violation.is_none() {
            first_violation = Some((accepted, t, uplift));
        }

        state = new_state;
        h_prev = h_new;

        let done = t >= config.t_final * (1.0 - 1e-12);
        if accepted.is_multiple_of(config.stride) || done {
            frames.push(make_frame(
                &sim,
                t,
                &state,
                h_new,
                sim.dissipation(&state)?,
                residual,
            ));
        }
    }

    Ok(SimResult {
        frames,
        accepted_steps: accepted,
        rejected_steps: rejected,
        termination,
        max_residual,
        max_entropy_uplift: if max_uplift.is_finite() {
            max_uplift
        } else {
            0.0
        },
        first_uplift_violation: first_violation,
    })
}

fn make_frame(
    sim: &Simulator<'_>,
    t: f64,
    state: &[f64],
    entropy: f64,
    dissipation: f64,
    residual: f64,
) -> Frame {
    let n = sim.n();
    let mut mass = vec![0.0; n];
    let mut min = vec![f64::INFINITY; n];
    let mut max = vec![f64::NEG_INFINITY; n];
    for j in 0..sim.cells {
        for i in 0..n {
            let v = state[j * n + i];
            mass[i] += v * sim.dx;
            min[i] = min[i].min(v);
            max[i] = max[i].max(v);
        }
    }
    Frame {
        t,
        entropy,
        dissipation,
        residual,
        mass,
        min,
        max,
        state: state.to_vec(),
    }
}
