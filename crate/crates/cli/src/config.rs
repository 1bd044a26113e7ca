//! Job configuration for `compute`: JSON parsing and validation.

use serde::Deserialize;
use spectral_torsion::forms::{OneForm, ThreeForm, ThreeFormRecords};
use spectral_torsion::scalar::{parse_rational, Rational};
use spectral_torsion::symbol::PerturbationCase;
use spectral_torsion::torsion::ManifoldSpec;
use spectral_torsion::Error;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    dimension: usize,
    case: String,
    u: OneForm,
    v: OneForm,
    w: OneForm,
    #[serde(rename = "T")]
    t: Option<ThreeFormRecords>,
    #[serde(rename = "Y")]
    y: Option<OneForm>,
    #[serde(rename = "X")]
    x: Option<OneForm>,
    #[serde(default)]
    with_boundary: bool,
    #[serde(default)]
    numeric_eval: bool,
    /// Values substituted for `tr_F(Φ)` and `dim_F` in the numeric evaluation.
    tr_f_phi: Option<String>,
    dim_f: Option<String>,
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub spec: ManifoldSpec,
    pub case: PerturbationCase,
    pub u: OneForm,
    pub v: OneForm,
    pub w: OneForm,
    pub numeric_eval: bool,
    pub tr_f_phi: Rational,
    pub dim_f: Rational,
}

/// 1-based line of the first occurrence of `"key"`, or line 1.
fn line_of(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(1, |i| i + 1)
}

fn invalid(text: &str, key: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::invalid(format!("line {}: {key}: {msg}", line_of(text, key)))
}

fn inconsistent(text: &str, key: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::inconsistent(format!("line {}: {key}: {msg}", line_of(text, key)))
}

fn check_len(text: &str, key: &str, form: &OneForm, n: usize) -> Result<(), CliError> {
    if form.dim() == n {
        Ok(())
    } else {
        Err(inconsistent(text, key, format!("has {} entries, dimension is {n}", form.dim())))
    }
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
            let message = e.to_string();
            let position = format!(" at line {} column {}", e.line(), e.column());
            CliError::invalid(format!(
                "line {}, column {}: {}",
                e.line(),
                e.column(),
                message.trim_end_matches(&position)
            ))
        })?;
        let n = raw.dimension;
        let spec = ManifoldSpec::new(n, raw.with_boundary).map_err(|e| inconsistent(text, "dimension", e))?;

        for (key, form) in [("u", &raw.u), ("v", &raw.v), ("w", &raw.w)] {
            check_len(text, key, form, n)?;
        }
        let forbid = |present: bool, key: &str| -> Result<(), CliError> {
            if present {
                Err(inconsistent(text, key, format!("not used by case {:?}", raw.case)))
            } else {
                Ok(())
            }
        };
        let three_form = |records: Option<ThreeFormRecords>| -> Result<ThreeForm, CliError> {
            let records =
                records.ok_or_else(|| invalid(text, "case", format!("case {:?} requires field T", raw.case)))?;
            records.into_form(n).map_err(|e| match e {
                Error::DimensionMismatch { .. } => inconsistent(text, "T", e),
                other => invalid(text, "T", other),
            })
        };

        let case = match raw.case.as_str() {
            "torsion_vector" => {
                forbid(raw.x.is_some(), "X")?;
                let y = raw.y.clone().unwrap_or_else(|| OneForm::zero(n));
                check_len(text, "Y", &y, n)?;
                PerturbationCase::TorsionVector { t: three_form(raw.t.clone())?, y }
            }
            "grading" => {
                forbid(raw.t.is_some(), "T")?;
                forbid(raw.x.is_some(), "X")?;
                forbid(raw.y.is_some(), "Y")?;
                PerturbationCase::Grading
            }
            "vector_grading" => {
                forbid(raw.t.is_some(), "T")?;
                forbid(raw.y.is_some(), "Y")?;
                let x =
                    raw.x.clone().ok_or_else(|| invalid(text, "case", "case \"vector_grading\" requires field X"))?;
                check_len(text, "X", &x, n)?;
                PerturbationCase::VectorGrading { x }
            }
            "torsion_grading" => {
                forbid(raw.x.is_some(), "X")?;
                forbid(raw.y.is_some(), "Y")?;
                PerturbationCase::TorsionGrading { t: three_form(raw.t.clone())? }
            }
            other => {
                return Err(invalid(
                    text,
                    "case",
                    format!(
                        "unknown case {other:?}; expected torsion_vector, grading, vector_grading or torsion_grading"
                    ),
                ))
            }
        };
        let atom_value = |key: &str, value: &Option<String>| -> Result<Rational, CliError> {
            match value {
                None => Ok(Rational::from_integer(1.into())),
                Some(s) => parse_rational(s).map_err(|e| invalid(text, key, e)),
            }
        };
        Ok(JobConfig {
            spec,
            case,
            u: raw.u,
            v: raw.v,
            w: raw.w,
            numeric_eval: raw.numeric_eval,
            tr_f_phi: atom_value("tr_f_phi", &raw.tr_f_phi)?,
            dim_f: atom_value("dim_f", &raw.dim_f)?,
        })
    }
}
