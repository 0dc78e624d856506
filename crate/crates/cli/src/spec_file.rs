//! Model-spec files: a JSON document selecting a family and its coefficient
//! blocks.
//!
//! ```json
//! {
//!   "family": "skt_linear",
//!   "n": 2,
//!   "domain": "positive_orthant",
//!   "margin": 0.05,
//!   "params": { "a0": [0.5, 0.5], "a": [[1.0, 2.0], [1.0, 1.0]] }
//! }
//! ```
//!
//! Unknown fields are rejected and validation failures carry the offending
//! field; JSON syntax errors keep serde's line/column diagnostics.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use crossdiff_core::models::{Domain, Family, ModelSpec};
use crossdiff_core::poly::Poly;
use crossdiff_core::Matrix;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    family: String,
    n: usize,
    domain: String,
    margin: f64,
    #[serde(default)]
    params: serde_json::Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SktLinearParams {
    a0: Vec<f64>,
    a: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SktPowerParams {
    s: f64,
    a0: Vec<f64>,
    a: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VolumeFillingSeparableParams {
    beta: Vec<f64>,
    s: Vec<f64>,
    gamma: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VolumeFillingChiParams {
    gamma: f64,
    c: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FluidLinearParams {
    a: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyTerm {
    coef: f64,
    exps: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FluidPolyParams {
    p: Vec<Vec<PolyTerm>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaFPolyParams {
    f: Vec<Vec<PolyTerm>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct KellerSegelParams {
    delta: f64,
}

/// Parse and validate a model-spec document.
pub fn parse_model_spec(text: &str) -> Result<ModelSpec> {
    let spec: SpecFile = serde_json::from_str(text).context("model spec does not parse")?;
    let n = spec.n;

    let family = match spec.family.as_str() {
        "skt_linear" => {
            let p: SktLinearParams = params(spec.params, "skt_linear")?;
            Family::SktLinear {
                a0: p.a0,
                a: matrix_from_nested("params.a", n, &p.a)?,
            }
        }
        "skt_power" => {
            let p: SktPowerParams = params(spec.params, "skt_power")?;
            Family::SktPower {
                s: p.s,
                a0: p.a0,
                a: matrix_from_nested("params.a", n, &p.a)?,
            }
        }
        "volume_filling_separable" => {
            let p: VolumeFillingSeparableParams = params(spec.params, "volume_filling_separable")?;
            Family::VolumeFillingSeparable {
                beta: p.beta,
                s: p.s,
                gamma: p.gamma,
            }
        }
        "volume_filling_chi" => {
            let p: VolumeFillingChiParams = params(spec.params, "volume_filling_chi")?;
            Family::VolumeFillingChi {
                gamma: p.gamma,
                c: matrix_from_nested("params.c", n, &p.c)?,
            }
        }
        "fluid_linear" => {
            let p: FluidLinearParams = params(spec.params, "fluid_linear")?;
            Family::FluidLinear {
                a: matrix_from_nested("params.a", n, &p.a)?,
            }
        }
        "fluid_poly" => {
            let p: FluidPolyParams = params(spec.params, "fluid_poly")?;
            Family::FluidPoly {
                p: polys_from_terms("params.p", n, &p.p)?,
            }
        }
        "keller_segel" => {
            let p: KellerSegelParams = params(spec.params, "keller_segel")?;
            Family::KellerSegel { delta: p.delta }
        }
        "cubic_example" => Family::CubicExample,
        "delta_f_poly" => {
            let p: DeltaFPolyParams = params(spec.params, "delta_f_poly")?;
            Family::DeltaFPoly {
                f: polys_from_terms("params.f", n, &p.f)?,
            }
        }
        other => bail!("field `family`: unknown family `{other}`"),
    };

    let model = ModelSpec::new(family, n, spec.margin)
        .map_err(|e| anyhow!("model validation failed: {e}"))?;

    let declared = match spec.domain.as_str() {
        "positive_orthant" => Domain::PositiveOrthant,
        "gibbs_simplex" => Domain::GibbsSimplex,
        other => bail!("field `domain`: unknown domain `{other}`"),
    };
    if declared != model.domain() {
        bail!(
            "field `domain`: family `{}` lives on {:?}",
            spec.family,
            model.domain()
        );
    }
    Ok(model)
}

/// Parse an n×n matrix file: a JSON array of rows.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(text).context("matrix does not parse")?;
    let n = rows.len();
    if n == 0 {
        bail!("matrix must have at least one row");
    }
    let m = matrix_from_nested("matrix", n, &rows)?;
    if !m.is_finite() {
        bail!("matrix entries must be finite");
    }
    Ok(m)
}

fn params<T: serde::de::DeserializeOwned>(value: serde_json::Value, family: &str) -> Result<T> {
    serde_json::from_value(value).with_context(|| format!("field `params` for `{family}`"))
}

fn matrix_from_nested(field: &str, n: usize, rows: &[Vec<f64>]) -> Result<Matrix> {
    if rows.len() != n {
        bail!("field `{field}`: expected {n} rows, got {}", rows.len());
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            bail!(
                "field `{field}`: row {i} has {} entries, expected {n}",
                row.len()
            );
        }
        flat.extend_from_slice(row);
    }
    Ok(Matrix::from_rows(n, &flat))
}

fn polys_from_terms(field: &str, n: usize, specs: &[Vec<PolyTerm>]) -> Result<Vec<Poly>> {
    if specs.len() != n {
        bail!(
            "field `{field}`: expected {n} polynomials, got {}",
            specs.len()
        );
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, terms)| {
            let parsed: Result<Vec<(f64, Vec<u32>)>> = terms
                .iter()
                .map(|t| {
                    if t.exps.len() != n {
                        bail!(
                            "field `{field}[{i}]`: exponent block has {} entries, expected {n}",
                            t.exps.len()
                        );
                    }
                    Ok((t.coef, t.exps.clone()))
                })
                .collect();
            Ok(Poly::new(n, parsed?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_skt_linear() {
        let text = r#"{
            "family": "skt_linear", "n": 2, "domain": "positive_orthant",
            "margin": 0.05,
            "params": {"a0": [0.5, 0.5], "a": [[1.0, 2.0], [1.0, 1.0]]}
        }"#;
        let model = parse_model_spec(text).unwrap();
        assert_eq!(model.family_name(), "skt_linear");
        assert_eq!(model.n(), 2);
    }

    #[test]
    fn rejects_unknown_field_and_wrong_domain() {
        let extra = r#"{"family": "cubic_example", "n": 3, "domain": "positive_orthant",
                        "margin": 0.05, "params": {}, "bogus": 1}"#;
        assert!(parse_model_spec(extra).is_err());

        let wrong = r#"{"family": "volume_filling_chi", "n": 2, "domain": "positive_orthant",
                        "margin": 0.05, "params": {"gamma": 1.0, "c": [[0.0,0.0],[0.0,0.0]]}}"#;
        let err = parse_model_spec(wrong).unwrap_err().to_string();
        assert!(err.contains("domain"), "{err}");
    }

    #[test]
    fn error_names_bad_field() {
        let text = r#"{"family": "skt_linear", "n": 2, "domain": "positive_orthant",
                       "margin": 0.05, "params": {"a0": [0.5], "a": [[1.0, 2.0], [1.0, 1.0]]}}"#;
        let err = format!("{:#}", parse_model_spec(text).unwrap_err());
        assert!(err.contains("a0"), "{err}");
    }

    #[test]
    fn parses_matrix_file() {
        let m = parse_matrix("[[1.0, 2.0], [0.0, 2.0]]").unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m[(0, 1)], 2.0);
        assert!(parse_matrix("[[1.0], [2.0, 3.0]]").is_err());
    }
}
