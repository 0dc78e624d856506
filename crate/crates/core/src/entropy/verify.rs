use alloc::string::String;
use alloc::vec::Vec;

use crate::ellipticity::NE_TOL_FACTOR;
use crate::linalg::{eigenvalues, symmetric_eigenvalues};
use crate::models::{DomainPoint, ModelSpec};
use crate::Verdict;

use super::density::EntropyDensity;
use super::EntropyError;

/// Tolerances for the structure verdict.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Relative symmetry-defect threshold for calling `h''A` symmetric.
    pub sym_tol_rel: f64,
    /// Margin tolerance factor: verdict margins within
    /// `factor·(1+‖M‖)` of zero are indeterminate.
    pub margin_tol_factor: f64,
    /// Eigenvector-basis condition limit for the diagonalizability record.
    pub diag_cond_limit: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            sym_tol_rel: 1e-8,
            margin_tol_factor: NE_TOL_FACTOR,
            diag_cond_limit: 1e8,
        }
    }
}

/// Per-sample verdict record.
#[derive(Debug, Clone)]
pub struct SampleRecord {
    pub u: Vec<f64>,
    /// Normal ellipticity of `A(u)` and its spectral margin.
    pub ne: Verdict,
    pub ne_margin: f64,
    /// Relative symmetry defect `‖M − Mᵀ‖/‖M‖` of `M = h''A`.
    pub sym_defect: f64,
    pub symmetric: bool,
    /// Positive definiteness of `M` (smallest eigenvalue of its symmetric
    /// part).
    pub pd: Verdict,
    pub pd_margin: f64,
    /// Convexity of `h` at the sample (smallest eigenvalue of `h''`).
    pub convex: Verdict,
    pub hessian_margin: f64,
    /// Real-diagonalizability of `A(u)`.
    pub diagonalizable: bool,
    /// Relative symmetry defect of the Onsager matrix `A·(h'')⁻¹`.
    pub onsager_defect: f64,
}

/// Aggregate structure verdict over a sample set.
///
/// The aggregate is the conjunction over samples with indeterminate margins
/// failing it. `sym_ne_without_pd` flags any sample where `h''A` is
/// symmetric and `A` is normally elliptic yet positive definiteness fails —
/// a combination the theory rules out, so it indicates a tolerance or
/// modelling problem rather than a mathematical state of affairs.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub model: String,
    pub entropy: &'static str,
    pub samples: Vec<SampleRecord>,
    pub ne: Verdict,
    pub pd: Verdict,
    pub convex: Verdict,
    pub symmetric: bool,
    pub diagonalizable: bool,
    pub sym_ne_without_pd: bool,
    pub notes: Vec<String>,
}

impl StructureReport {
    /// An entropy structure is established when `h` is convex and `h''A` is
    /// positive definite at every sample.
    pub fn entropy_structure_found(&self) -> bool {
        self.pd.is_pass() && self.convex.is_pass()
    }
}

/// Evaluate `A(u)`, `h''(u)`, and `M = h''A` at each sample and aggregate
/// the verdicts.
pub fn verify_entropy_structure(
    model: &ModelSpec,
    h: &EntropyDensity,
    samples: &[DomainPoint],
    config: &VerifyConfig,
) -> Result<StructureReport, EntropyError> {
    assert!(!samples.is_empty(), "at least one sample required");
    let mut records = Vec::with_capacity(samples.len());
    let mut agg_ne = Verdict::Pass;
    let mut agg_pd = Verdict::Pass;
    let mut agg_convex = Verdict::Pass;
    let mut agg_sym = true;
    let mut agg_diag = true;
    let mut conflict = false;

    for point in samples {
        let u = point.coords();
        let a = model.diffusion_matrix(u)?;
        let hess = h.hessian(u)?;
        let m = hess.matmul(&a);

        let spectrum = eigenvalues(&a, crate::default_tol(a.norm_inf()))?;
        let ne_tol = config.margin_tol_factor * (1.0 + a.norm_inf());
        let ne_margin = spectrum.min_real_part;
        let ne = Verdict::from_margin(ne_margin, ne_tol);
        let diagonalizable = spectrum.all_real()
            && spectrum.eigvec_condition.is_finite()
            && spectrum.eigvec_condition < config.diag_cond_limit;

        let m_scale = m.norm_inf().max(1e-300);
        let sym_defect = m.symmetry_defect() / m_scale;
        let symmetric = sym_defect <= config.sym_tol_rel;

        let m_tol = config.margin_tol_factor * (1.0 + m.norm_inf());
        let pd_margin = symmetric_eigenvalues(&m.symmetric_part())[0];
        let pd = Verdict::from_margin(pd_margin, m_tol);

        let h_tol = config.margin_tol_factor * (1.0 + hess.norm_inf());
        let hessian_margin = symmetric_eigenvalues(&hess.symmetric_part())[0];
        let convex = Verdict::from_margin(hessian_margin, h_tol);

        let onsager_defect = match hess.inverse() {
            Ok(hinv) => {
                let o = a.matmul(&hinv);
                o.symmetry_defect() / o.norm_inf().max(1e-300)
            }
            Err(_) => f64::INFINITY,
        };

        if symmetric && ne == Verdict::Pass && pd == Verdict::Fail {
            conflict = true;
        }

        agg_ne = agg_ne.and(ne);
        agg_pd = agg_pd.and(pd);
        agg_convex = agg_convex.and(convex);
        agg_sym &= symmetric;
        agg_diag &= diagonalizable;

        records.push(SampleRecord {
            u: u.to_vec(),
            ne,
            ne_margin,
            sym_defect,
            symmetric,
            pd,
            pd_margin,
            convex,
            hessian_margin,
            diagonalizable,
            onsager_defect,
        });
    }

    let notes = model.notes();
    Ok(StructureReport {
        model: String::from(model.family_name()),
        entropy: h.provenance(),
        samples: records,
        ne: agg_ne,
        pd: agg_pd,
        convex: agg_convex,
        symmetric: agg_sym,
        diagonalizable: agg_diag,
        sym_ne_without_pd: conflict,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{boltzmann_entropy, keller_segel_entropy, potential_entropy};
    use crate::linalg::Matrix;
    use crate::models::Family;
    use alloc::vec;

    fn samples(model: &ModelSpec, count: usize) -> Vec<DomainPoint> {
        model.sample_domain(count, 0.05, 11).unwrap()
    }

    #[test]
    fn detailed_balance_population_model_passes() {
        // Unit coefficients are symmetric, so π = 1 and h''A = diag(1/uᵢ)A
        // is symmetric positive definite at every sample.
        let model = ModelSpec::new(
            Family::SktLinear {
                a0: vec![1.0, 1.0],
                a: Matrix::from_fn(2, |_, _| 1.0),
            },
            2,
            0.05,
        )
        .unwrap();
        let h = boltzmann_entropy(&[1.0, 1.0]).unwrap();
        let report =
            verify_entropy_structure(&model, &h, &samples(&model, 30), &VerifyConfig::default())
                .unwrap();
        assert!(report.entropy_structure_found());
        assert!(report.symmetric);
        assert!(report.ne.is_pass());
        assert!(report.diagonalizable);
        assert!(!report.sym_ne_without_pd);
        // 2×2 minors positive at each sample is equivalent here.
        for rec in &report.samples {
            assert!(rec.pd_margin > 0.0);
            assert!(rec.sym_defect < 1e-12);
        }
    }

    #[test]
    fn keller_segel_pd_without_symmetry() {
        let model = ModelSpec::new(Family::KellerSegel { delta: 1.0 }, 2, 0.05).unwrap();
        let h = keller_segel_entropy(1.0).unwrap();
        let report =
            verify_entropy_structure(&model, &h, &samples(&model, 30), &VerifyConfig::default())
                .unwrap();
        assert!(report.pd.is_pass());
        assert!(report.convex.is_pass());
        assert!(!report.symmetric, "Onsager route is non-symmetric here");
        assert!(report.ne.is_pass());
        assert!(!report.sym_ne_without_pd);
        for rec in &report.samples {
            assert!(rec.onsager_defect > 1e-3);
        }
    }

    #[test]
    fn cyclic_population_matrix_fails_symmetry_without_false_claim() {
        // a₁₃ = a₂₁ = a₃₂ = 1 pattern: normally elliptic at all samples, but
        // h''A with unit Boltzmann weights has M₁₂ = 0 against M₂₁ = 1.
        let mut a = Matrix::zeros(3);
        a[(0, 2)] = 1.0;
        a[(1, 0)] = 1.0;
        a[(2, 1)] = 1.0;
        let model = ModelSpec::new(
            Family::SktLinear {
                a0: vec![0.0; 3],
                a,
            },
            3,
            0.05,
        )
        .unwrap();
        let h = boltzmann_entropy(&[1.0, 1.0, 1.0]).unwrap();
        let report =
            verify_entropy_structure(&model, &h, &samples(&model, 30), &VerifyConfig::default())
                .unwrap();
        assert!(report.ne.is_pass());
        assert!(!report.symmetric);
        for rec in &report.samples {
            let u = &rec.u;
            // Entry (1,2) of h''A is A₁₂/u₁ = 0 while (2,1) is a₂₁ = 1, so
            // the absolute defect is at least 1 at every u.
            assert!(!rec.symmetric, "symmetric at {u:?}");
            assert!(rec.sym_defect > 1e-3, "defect {} at {u:?}", rec.sym_defect);
        }
        assert!(!report.sym_ne_without_pd);
    }

    #[test]
    fn cubic_example_with_cubic_density() {
        use crate::entropy::{EntropyDensity, EntropyKind, Func1};
        use crate::poly::Poly1;
        let model = ModelSpec::new(Family::CubicExample, 3, 0.05).unwrap();
        // h = Σuᵢ³/6, i.e. hᵢ'' = uᵢ.
        let h = EntropyDensity::new(EntropyKind::Separable {
            parts: vec![
                Func1::Poly(Poly1::new(vec![0.0, 1.0])),
                Func1::Poly(Poly1::new(vec![0.0, 1.0])),
                Func1::Poly(Poly1::new(vec![0.0, 1.0])),
            ],
            star: vec![1.0, 1.0, 1.0],
        });
        let report =
            verify_entropy_structure(&model, &h, &samples(&model, 30), &VerifyConfig::default())
                .unwrap();
        assert!(report.entropy_structure_found());
        assert!(report.ne.is_pass());
    }

    #[test]
    fn indefinite_potential_reconstruction_fails_convexity() {
        let a = Matrix::from_rows(2, &[1.0, 2.0, 1.0, 1.0]);
        let model = ModelSpec::new(Family::FluidLinear { a }, 2, 0.05).unwrap();
        let pts = samples(&model, 20);
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.coords()).collect();
        let h = potential_entropy(&model, &[1.0, 2.0], &[1.0, 1.0], &refs).unwrap();
        let report = verify_entropy_structure(&model, &h, &pts, &VerifyConfig::default()).unwrap();
        assert!(!report.entropy_structure_found());
        assert_eq!(report.convex, Verdict::Fail);
        // h''A = h''·diag(u)·... stays symmetric-defective or indefinite,
        // but the decisive failure is convexity.
        assert!(!report.sym_ne_without_pd);
    }
}
