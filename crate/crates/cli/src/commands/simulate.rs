use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use crossdiff_core::models::Domain;
use crossdiff_core::simulate::{run, InitialProfile, SimConfig, Termination, MONOTONICITY_TOL};

use crate::commands::{parse_f64_list, select_entropy, EntropyChoice};
use crate::csv_out::{write_snapshots, write_time_series};
use crate::exit_code;
use crate::spec_file::parse_model_spec;

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Model-spec JSON file.
    pub spec: PathBuf,
    /// Time-series CSV output path.
    #[arg(long, default_value = "series.csv")]
    pub out: PathBuf,
    /// Number of grid cells.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Final time.
    #[arg(long, default_value_t = 0.01)]
    pub tfinal: f64,
    /// CFL safety factor in (0, 1).
    #[arg(long, default_value_t = 0.4)]
    pub safety: f64,
    /// Interval length.
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
    /// Record every k-th accepted step.
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
    /// Per-species base values, comma separated (defaults per domain).
    #[arg(long)]
    pub base: Option<String>,
    /// Per-species bump amplitudes, comma separated.
    #[arg(long)]
    pub amp: Option<String>,
    /// Entropy construction.
    #[arg(long, value_enum, default_value_t = EntropyChoice::Auto)]
    pub entropy: EntropyChoice,
    /// Override detailed-balance weights.
    #[arg(long)]
    pub pi: Option<String>,
    /// Sampler seed (used by the entropy selection).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Optional per-frame state snapshots CSV.
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
}

/// Run the 1D solver and write the CSV time series. Exit 0 when the run
/// completed with a monotone entropy series, 4 on a monotonicity violation
/// (first offending step on stderr), 5 when the run stalled or diverged,
/// 1 on input errors.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<i32> {
    let text = match fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.spec.display());
            return Ok(exit_code::PARSE);
        }
    };
    let model = match parse_model_spec(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(exit_code::PARSE);
        }
    };
    let n = model.n();

    let points = model
        .sample_domain(50, model.margin(), args.seed)
        .map_err(|e| anyhow::anyhow!("sampling failed: {e}"))?;
    let coords: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();
    let pi_override = match &args.pi {
        Some(text) => Some(parse_f64_list(text)?),
        None => None,
    };
    let selected = match select_entropy(&model, args.entropy, pi_override.as_deref(), &coords) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: entropy construction failed: {e:#}");
            return Ok(exit_code::PARSE);
        }
    };

    let initial = initial_profile(&model, args)?;
    let config = SimConfig {
        cells: args.grid,
        length: args.length,
        initial,
        t_final: args.tfinal,
        safety: args.safety,
        stride: args.stride,
    };

    let result = match run(&model, &selected.density, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(exit_code::PARSE);
        }
    };

    let mut file =
        fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_time_series(&mut file, &result, n)?;
    if let Some(path) = &args.snapshots {
        let mut snap =
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_snapshots(&mut snap, &result, n, args.length)?;
    }
    println!("{}", args.out.display());
    eprintln!(
        "simulate: {} steps accepted, {} rejected, termination {:?}, max residual {:.3e}",
        result.accepted_steps, result.rejected_steps, result.termination, result.max_residual
    );

    match result.termination {
        Termination::Stalled | Termination::Diverged => {
            eprintln!("error: run did not complete ({:?})", result.termination);
            Ok(exit_code::SIM_FAILED)
        }
        Termination::Completed => {
            if let Some((step, t, uplift)) = result.first_uplift_violation {
                eprintln!(
                    "error: entropy increased by {uplift:.3e} (relative) at step {step}, t = {t:.6e}; tolerance {MONOTONICITY_TOL:.1e}"
                );
                Ok(exit_code::MONOTONICITY)
            } else {
                Ok(exit_code::OK)
            }
        }
    }
}

fn initial_profile(
    model: &crossdiff_core::ModelSpec,
    args: &SimulateArgs,
) -> Result<InitialProfile> {
    let n = model.n();
    let base = match &args.base {
        Some(text) => parse_f64_list(text)?,
        None => match model.domain() {
            Domain::PositiveOrthant => vec![1.0; n],
            Domain::GibbsSimplex => vec![0.8 / (n as f64 + 1.0); n],
        },
    };
    let amplitude = match &args.amp {
        Some(text) => parse_f64_list(text)?,
        None => base
            .iter()
            .enumerate()
            .map(|(i, b)| 0.2 * b * if i % 2 == 0 { 1.0 } else { -1.0 })
            .collect(),
    };
    Ok(InitialProfile { base, amplitude })
}
