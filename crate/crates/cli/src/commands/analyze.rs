use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use crossdiff_core::ellipticity::{
    diagonal_dominance_certificate, fluid_2x2_iff, generalized_skt_condition, routh_hurwitz_3,
    skt3_admissible_triple, skt_ne_certificate,
};
use crossdiff_core::entropy::{verify_entropy_structure, VerifyConfig};
use crossdiff_core::models::Family;
use crossdiff_core::Verdict;

use crate::commands::{parse_f64_list, select_entropy, EntropyChoice};
use crate::exit_code;
use crate::report::{
    aggregate_from_core, now_unix, samples_from_core, verdict_str, Certificates,
    DetailedBalanceReport, Fluid2x2Report, ModelEcho, Report, TOOL_VERSION,
};
use crate::spec_file::parse_model_spec;

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Model-spec JSON file.
    pub spec: PathBuf,
    /// Report output path.
    #[arg(long, default_value = "report.json")]
    pub out: PathBuf,
    /// Number of domain samples.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Interior sampling margin.
    #[arg(long, default_value_t = 0.05)]
    pub margin: f64,
    /// Sampler seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Entropy construction to use.
    #[arg(long, value_enum, default_value_t = EntropyChoice::Auto)]
    pub entropy: EntropyChoice,
    /// Override detailed-balance weights, comma separated.
    #[arg(long)]
    pub pi: Option<String>,
    /// Override the symmetry-defect tolerance.
    #[arg(long)]
    pub tol_sym: Option<f64>,
    /// Override the margin tolerance factor for strict-inequality verdicts.
    #[arg(long)]
    pub tol_margin: Option<f64>,
}

/// Pipeline: sample the domain, try the entropy construction, verify the
/// structure, attach ellipticity certificates, and write the JSON report.
///
/// Exit codes: 0 when an entropy structure is established, 2 when normal
/// ellipticity definitively fails somewhere (no structure can exist), 3 when
/// the verdict is indeterminate (construction infeasible or margins inside
/// tolerance), 1 on input errors.
pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<i32> {
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

    let points = model
        .sample_domain(args.samples.max(1), args.margin, args.seed)
        .map_err(|e| anyhow::anyhow!("sampling failed: {e}"))?;
    let coords: Vec<&[f64]> = points.iter().map(|p| p.coords()).collect();

    let pi_override = match &args.pi {
        Some(text) => Some(parse_f64_list(text)?),
        None => None,
    };

    let mut notes = model.notes();
    let selected = select_entropy(&model, args.entropy, pi_override.as_deref(), &coords);

    let mut config = VerifyConfig::default();
    if let Some(tol) = args.tol_sym {
        config.sym_tol_rel = tol;
    }
    if let Some(tol) = args.tol_margin {
        config.margin_tol_factor = tol;
    }

    let (db_report, entropy_name, ne_verdict, aggregate, sample_records, verdict, exit) =
        match selected {
            Ok(sel) => {
                let structure = verify_entropy_structure(&model, &sel.density, &points, &config)
                    .map_err(|e| anyhow::anyhow!("verification failed: {e}"))?;
                notes.extend(structure.notes.iter().cloned());
                if let Some(db) = &sel.detailed_balance {
                    if !db.skipped_zero_pairs.is_empty() {
                        notes.push(String::from(
                        "detailed balance solved over a spanning forest; index pairs with both \
                         coefficients zero impose no condition and were skipped",
                    ));
                    }
                }
                let verdict = if structure.entropy_structure_found() {
                    "found"
                } else if structure.ne == Verdict::Fail {
                    "absent"
                } else {
                    "indeterminate"
                };
                let exit = match verdict {
                    "found" => exit_code::OK,
                    "absent" => exit_code::ABSENT,
                    _ => exit_code::INDETERMINATE,
                };
                (
                    sel.detailed_balance
                        .as_ref()
                        .map(DetailedBalanceReport::from_core),
                    Some(structure.entropy),
                    verdict_str(structure.ne),
                    Some(aggregate_from_core(&structure)),
                    samples_from_core(&structure),
                    verdict,
                    exit,
                )
            }
            Err(e) => {
                // No entropy density: the verdict rests on ellipticity alone.
                eprintln!("note: entropy construction unavailable: {e:#}");
                notes.push(format!("entropy construction unavailable: {e:#}"));
                let db = detailed_balance_only(&model, &coords);
                let mut ne = Verdict::Pass;
                for u in &coords {
                    let a = model.diffusion_matrix(u)?;
                    let (v, _) = crossdiff_core::ellipticity::normal_ellipticity(
                        &a,
                        crossdiff_core::ellipticity::ne_tol(&a),
                    )?;
                    ne = ne.and(v);
                }
                let verdict = if ne == Verdict::Fail {
                    "absent"
                } else {
                    "indeterminate"
                };
                let exit = if ne == Verdict::Fail {
                    exit_code::ABSENT
                } else {
                    exit_code::INDETERMINATE
                };
                (db, None, verdict_str(ne), None, Vec::new(), verdict, exit)
            }
        };

    let certificates = build_certificates(&model, &coords)?;

    let report = Report {
        tool: "crossdiff",
        version: TOOL_VERSION,
        generated_at_unix: now_unix(),
        seed: args.seed,
        samples: points.len(),
        margin: args.margin,
        model: ModelEcho {
            family: model.family_name().to_string(),
            n: model.n(),
            domain: match model.domain() {
                crossdiff_core::models::Domain::PositiveOrthant => "positive_orthant",
                crossdiff_core::models::Domain::GibbsSimplex => "gibbs_simplex",
            },
        },
        detailed_balance: db_report,
        normally_elliptic: ne_verdict,
        entropy: entropy_name,
        aggregate,
        certificates,
        sample_records,
        notes,
        verdict,
    };

    let json = serde_json::to_string_pretty(&report)?;
    fs::write(&args.out, json).with_context(|| format!("writing {}", args.out.display()))?;
    println!("{}", args.out.display());
    eprintln!(
        "analyze: {} with {} samples -> {}",
        report.model.family, report.samples, verdict
    );
    Ok(exit)
}

fn detailed_balance_only(
    model: &crossdiff_core::ModelSpec,
    coords: &[&[f64]],
) -> Option<DetailedBalanceReport> {
    let db = match model.family() {
        Family::SktLinear { a, .. } => crossdiff_core::entropy::solve_detailed_balance_constant(a),
        _ => crossdiff_core::entropy::solve_detailed_balance_pressures(model, coords).ok()?,
    };
    Some(DetailedBalanceReport::from_core(&db))
}

fn build_certificates(
    model: &crossdiff_core::ModelSpec,
    coords: &[&[f64]],
) -> Result<Certificates> {
    let mut certs = Certificates::default();
    match model.family() {
        Family::SktLinear { a0, a } => {
            certs.skt_coefficient = Some(skt_ne_certificate(a0, a).map_err(anyhow::Error::msg)?);
            if model.n() == 3 {
                certs.skt3_admissible_triple =
                    Some(skt3_admissible_triple(a0, a).map_err(anyhow::Error::msg)?);
            }
            let mut dominated = 0usize;
            for u in coords {
                let mat = model.diffusion_matrix(u)?;
                if diagonal_dominance_certificate(&mat, u).map_err(anyhow::Error::msg)? {
                    dominated += 1;
                }
            }
            certs.diagonal_dominance_samples = Some(dominated);
        }
        Family::SktPower { .. } => {
            certs.generalized_skt =
                Some(generalized_skt_condition(model, coords).map_err(anyhow::Error::msg)?);
        }
        Family::FluidLinear { a } if model.n() == 2 => {
            let iff = fluid_2x2_iff(a).map_err(anyhow::Error::msg)?;
            certs.fluid_2x2 = Some(Fluid2x2Report {
                normally_elliptic: iff.normally_elliptic,
                positive_definite: iff.positive_definite,
                det: iff.det,
            });
        }
        _ => {}
    }
    if model.n() == 3 {
        let mut all_stable = true;
        for u in coords {
            let mat = model.diffusion_matrix(u)?;
            if !routh_hurwitz_3(&mat).map_err(anyhow::Error::msg)?.stable {
                all_stable = false;
                break;
            }
        }
        certs.routh_hurwitz_all_samples = Some(all_stable);
    }
    Ok(certs)
}
