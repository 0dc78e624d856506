//! Subcommand implementations. Each returns the process exit code and writes
//! human-readable diagnostics to stderr; stdout carries only the output path
//! (or the factorization result).

mod analyze;
mod factorize;
mod simulate;

pub use analyze::{cmd_analyze, AnalyzeArgs};
pub use factorize::{cmd_factorize, FactorizeArgs};
pub use simulate::{cmd_simulate, SimulateArgs};

use anyhow::{anyhow, bail, Result};

use crossdiff_core::entropy::{self, DetailedBalance, EntropyDensity, EntropyKind, Func1};
use crossdiff_core::models::{Family, ModelSpec};
use crossdiff_core::poly::Poly1;
use crossdiff_core::Matrix;

/// Which entropy construction to use; `Auto` picks per family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EntropyChoice {
    Auto,
    Boltzmann,
    Quadratic,
    VolumeFilling,
    Potential,
    Separable,
}

pub struct SelectedEntropy {
    pub density: EntropyDensity,
    pub detailed_balance: Option<DetailedBalance>,
}

/// Detect a u-independent diffusion matrix by comparing evaluations.
fn constant_diffusion(model: &ModelSpec, samples: &[&[f64]]) -> Option<Matrix> {
    let first = model.diffusion_matrix(samples.first()?).ok()?;
    for &u in samples.iter().skip(1) {
        let a = model.diffusion_matrix(u).ok()?;
        if a.sub(&first).norm_inf() > 1e-12 * first.norm_inf().max(1.0) {
            return None;
        }
    }
    Some(first)
}

/// Construct the entropy density for a model.
///
/// The fixed auto-selection order is: the closed-form separable densities
/// for the Keller–Segel and cubic families; the volume-filling density on
/// the simplex; a quadratic density from the Lyapunov solve when `A` turns
/// out constant; otherwise detailed balance on the pressure field followed
/// by the Boltzmann density. `--entropy potential` selects the second
/// (quadratic-type) density for pressure families, and `--pi` overrides the
/// detailed-balance weights.
pub fn select_entropy(
    model: &ModelSpec,
    choice: EntropyChoice,
    pi_override: Option<&[f64]>,
    samples: &[&[f64]],
) -> Result<SelectedEntropy> {
    let db_constant = |a: &Matrix| entropy::solve_detailed_balance_constant(a);
    let db_pressures = || entropy::solve_detailed_balance_pressures(model, samples);

    let pick_pi = |db: &DetailedBalance| -> Result<Vec<f64>> {
        if let Some(pi) = pi_override {
            if pi.len() != model.n() {
                bail!("--pi must list {} weights", model.n());
            }
            return Ok(pi.to_vec());
        }
        if !db.feasible {
            bail!("detailed balance infeasible; no Boltzmann weights exist");
        }
        Ok(db.pi.clone())
    };

    let boltzmann_route = |db: DetailedBalance| -> Result<SelectedEntropy> {
        let pi = pick_pi(&db)?;
        Ok(SelectedEntropy {
            density: entropy::boltzmann_entropy(&pi).map_err(|e| anyhow!("{e}"))?,
            detailed_balance: Some(db),
        })
    };

    let potential_route = |db: DetailedBalance| -> Result<SelectedEntropy> {
        let pi = pick_pi(&db)?;
        let reference = samples
            .first()
            .ok_or_else(|| anyhow!("no samples available"))?;
        Ok(SelectedEntropy {
            density: entropy::potential_entropy(model, &pi, reference, samples)
                .map_err(|e| anyhow!("{e}"))?,
            detailed_balance: Some(db),
        })
    };

    match choice {
        EntropyChoice::Auto => match model.family() {
            Family::KellerSegel { delta } => Ok(SelectedEntropy {
                density: entropy::keller_segel_entropy(*delta).map_err(|e| anyhow!("{e}"))?,
                detailed_balance: None,
            }),
            Family::CubicExample => Ok(SelectedEntropy {
                density: cubic_density(),
                detailed_balance: None,
            }),
            Family::VolumeFillingSeparable { .. } | Family::VolumeFillingChi { .. } => {
                Ok(SelectedEntropy {
                    density: entropy::volume_filling_entropy(model).map_err(|e| anyhow!("{e}"))?,
                    detailed_balance: None,
                })
            }
            Family::DeltaFPoly { .. } => potential_route(db_pressures()?),
            Family::SktLinear { a, .. } => boltzmann_route(db_constant(a)),
            _ => {
                if let Some(constant) = constant_diffusion(model, samples) {
                    return Ok(SelectedEntropy {
                        density: entropy::quadratic_entropy_from_lyapunov(&constant)
                            .map_err(|e| anyhow!("{e}"))?,
                        detailed_balance: None,
                    });
                }
                boltzmann_route(db_pressures()?)
            }
        },
        EntropyChoice::Boltzmann => match model.family() {
            Family::SktLinear { a, .. } => boltzmann_route(db_constant(a)),
            _ => boltzmann_route(db_pressures()?),
        },
        EntropyChoice::Potential => potential_route(db_pressures()?),
        EntropyChoice::VolumeFilling => Ok(SelectedEntropy {
            density: entropy::volume_filling_entropy(model).map_err(|e| anyhow!("{e}"))?,
            detailed_balance: None,
        }),
        EntropyChoice::Quadratic => {
            let constant = constant_diffusion(model, samples)
                .ok_or_else(|| anyhow!("quadratic density requires a constant diffusion matrix"))?;
            Ok(SelectedEntropy {
                density: entropy::quadratic_entropy_from_lyapunov(&constant)
                    .map_err(|e| anyhow!("{e}"))?,
                detailed_balance: None,
            })
        }
        EntropyChoice::Separable => match model.family() {
            Family::KellerSegel { delta } => Ok(SelectedEntropy {
                density: entropy::keller_segel_entropy(*delta).map_err(|e| anyhow!("{e}"))?,
                detailed_balance: None,
            }),
            Family::CubicExample => Ok(SelectedEntropy {
                density: cubic_density(),
                detailed_balance: None,
            }),
            _ => bail!(
                "no built-in separable density for family {}",
                model.family_name()
            ),
        },
    }
}

/// `h = Σ uᵢ³/6`, i.e. `hᵢ'' = uᵢ`, the natural density for the cubic flux
/// example.
fn cubic_density() -> EntropyDensity {
    let linear = || Func1::Poly(Poly1::new(vec![0.0, 1.0]));
    EntropyDensity::new(EntropyKind::Separable {
        parts: vec![linear(), linear(), linear()],
        star: vec![1.0, 1.0, 1.0],
    })
}

/// Parse a comma-separated list of f64 flags like `--pi 1,2`.
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| anyhow!("bad number `{part}`: {e}"))
        })
        .collect()
}
