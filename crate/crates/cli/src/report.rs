//! JSON analysis report.
//!
//! Field order is fixed by the struct definitions and all maps are vectors,
//! so a report is byte-identical across runs with the same inputs except
//! for `generated_at_unix`.

use serde::Serialize;

use crossdiff_core::entropy::{DbViolation, DetailedBalance, StructureReport};
use crossdiff_core::Verdict;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_at_unix: u64,
    pub seed: u64,
    pub samples: usize,
    pub margin: f64,
    pub model: ModelEcho,
    pub detailed_balance: Option<DetailedBalanceReport>,
    /// Aggregate normal-ellipticity verdict, present even when no entropy
    /// construction applied.
    pub normally_elliptic: &'static str,
    pub entropy: Option<&'static str>,
    pub aggregate: Option<AggregateReport>,
    pub certificates: Certificates,
    pub sample_records: Vec<SampleReport>,
    pub notes: Vec<String>,
    /// Overall verdict: "found", "absent", or "indeterminate".
    pub verdict: &'static str,
}

#[derive(Debug, Serialize)]
pub struct ModelEcho {
    pub family: String,
    pub n: usize,
    pub domain: &'static str,
}

#[derive(Debug, Serialize)]
pub struct DetailedBalanceReport {
    pub feasible: bool,
    pub pi: Vec<f64>,
    pub violation: Option<String>,
    pub skipped_zero_pairs: Vec<(usize, usize)>,
}

impl DetailedBalanceReport {
    pub fn from_core(db: &DetailedBalance) -> Self {
        DetailedBalanceReport {
            feasible: db.feasible,
            pi: db.pi.clone(),
            violation: db.violation.map(|v| match v {
                DbViolation::OneSidedZero { i, j } => {
                    format!("one-sided zero at ({i}, {j})")
                }
                DbViolation::SignMismatch { i, j } => {
                    format!("sign mismatch at ({i}, {j})")
                }
                DbViolation::CycleInconsistent { i, j } => {
                    format!("cycle inconsistent at edge ({i}, {j})")
                }
                DbViolation::SampleInconsistent { sample, i, j } => {
                    format!("weights fail at sample {sample}, pair ({i}, {j})")
                }
            }),
            skipped_zero_pairs: db.skipped_zero_pairs.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AggregateReport {
    pub normally_elliptic: &'static str,
    pub positive_definite: &'static str,
    pub convex: &'static str,
    pub symmetric: bool,
    pub diagonalizable: bool,
    pub sym_ne_without_pd: bool,
}

#[derive(Debug, Serialize, Default)]
pub struct Certificates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skt_coefficient: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skt3_admissible_triple: Option<Option<(usize, usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub routh_hurwitz_all_samples: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonal_dominance_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generalized_skt: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fluid_2x2: Option<Fluid2x2Report>,
}

#[derive(Debug, Serialize)]
pub struct Fluid2x2Report {
    pub normally_elliptic: bool,
    pub positive_definite: bool,
    pub det: f64,
}

#[derive(Debug, Serialize)]
pub struct SampleReport {
    pub u: Vec<f64>,
    pub ne: &'static str,
    pub ne_margin: f64,
    pub sym_defect: f64,
    pub symmetric: bool,
    pub pd: &'static str,
    pub pd_margin: f64,
    pub convex: &'static str,
    pub hessian_margin: f64,
    pub diagonalizable: bool,
    pub onsager_defect: f64,
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Indeterminate => "indeterminate",
    }
}

pub fn aggregate_from_core(report: &StructureReport) -> AggregateReport {
    AggregateReport {
        normally_elliptic: verdict_str(report.ne),
        positive_definite: verdict_str(report.pd),
        convex: verdict_str(report.convex),
        symmetric: report.symmetric,
        diagonalizable: report.diagonalizable,
        sym_ne_without_pd: report.sym_ne_without_pd,
    }
}

pub fn samples_from_core(report: &StructureReport) -> Vec<SampleReport> {
    report
        .samples
        .iter()
        .map(|rec| SampleReport {
            u: rec.u.clone(),
            ne: verdict_str(rec.ne),
            ne_margin: rec.ne_margin,
            sym_defect: rec.sym_defect,
            symmetric: rec.symmetric,
            pd: verdict_str(rec.pd),
            pd_margin: rec.pd_margin,
            convex: verdict_str(rec.convex),
            hessian_margin: rec.hessian_margin,
            diagonalizable: rec.diagonalizable,
            onsager_defect: rec.onsager_defect,
        })
        .collect()
}

pub fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
