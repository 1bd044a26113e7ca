//! Machine-readable reports. Field order is the declared order.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use spectral_torsion::scalar::{rational_to_f64, SymAtom, SymScalar};
use spectral_torsion::sphere::vol_numeric;
use spectral_torsion::torsion::{IdentityComparison, IdentityId, TorsionReport};

use crate::config::JobConfig;

/// A symbolic value as its canonical string and its term list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rendered {
    pub canonical: String,
    pub terms: SymScalar,
}

impl From<&SymScalar> for Rendered {
    fn from(s: &SymScalar) -> Self {
        Self { canonical: s.to_string(), terms: s.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderedComparison {
    pub id: IdentityId,
    pub dim: usize,
    pub computed: Rendered,
    pub paper: Rendered,
    pub matches: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&IdentityComparison> for RenderedComparison {
    fn from(c: &IdentityComparison) -> Self {
        Self {
            id: c.id,
            dim: c.dim,
            computed: (&c.computed).into(),
            paper: (&c.paper).into(),
            matches: c.matches,
            note: c.note.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericValues {
    pub interior: ComplexValue,
    pub boundary: ComplexValue,
    pub total: ComplexValue,
    pub theorem: ComplexValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobOutput {
    pub dimension: usize,
    pub case: String,
    pub with_boundary: bool,
    pub interior: Rendered,
    pub boundary: Rendered,
    pub total: Rendered,
    pub theorem: Rendered,
    pub matches: bool,
    pub identities: Vec<RenderedComparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericValues>,
}

impl JobOutput {
    pub fn new(job: &JobConfig, report: &TorsionReport) -> Self {
        let total = report.total();
        let numeric = job.numeric_eval.then(|| {
            let env = atom_values(job, &[&report.interior_density, &report.boundary_density, &report.theorem_value]);
            let eval = |s: &SymScalar| {
                let z = s.eval(&env).expect("every atom has a value");
                ComplexValue { re: z.re, im: z.im }
            };
            NumericValues {
                interior: eval(&report.interior_density),
                boundary: eval(&report.boundary_density),
                total: eval(&total),
                theorem: eval(&report.theorem_value),
            }
        });
        Self {
            dimension: job.spec.dim(),
            case: job.case.name().to_string(),
            with_boundary: job.spec.with_boundary(),
            interior: (&report.interior_density).into(),
            boundary: (&report.boundary_density).into(),
            total: (&total).into(),
            theorem: (&report.theorem_value).into(),
            matches: report.matches_theorem,
            identities: report.identity_comparisons.iter().map(Into::into).collect(),
            numeric,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output is always serializable")
    }
}

fn atom_values(job: &JobConfig, values: &[&SymScalar]) -> HashMap<SymAtom, num_complex::Complex64> {
    let mut env = HashMap::new();
    for atom in values.iter().flat_map(|s| s.atoms()) {
        let x = match atom {
            SymAtom::Pi => std::f64::consts::PI,
            SymAtom::TrFPhi => rational_to_f64(&job.tr_f_phi),
            SymAtom::DimF => rational_to_f64(&job.dim_f),
            SymAtom::VolSphere(k) => vol_numeric(k),
        };
        env.insert(atom, num_complex::Complex64::new(x, 0.0));
    }
    env
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRun {
    pub dim: usize,
    pub seed: u64,
    pub finals_match: bool,
    pub rows: Vec<RenderedComparison>,
}

/// Plain-text table: id, match flag, computed, paper, note.
pub fn render_table(run: &VerifyRun) -> String {
    let mut out = format!("n = {} (seed {})\n", run.dim, run.seed);
    let width = |f: fn(&RenderedComparison) -> usize| run.rows.iter().map(f).max().unwrap_or(0);
    let wc = width(|r| r.computed.canonical.chars().count()).max("computed".len());
    let wp = width(|r| r.paper.canonical.chars().count()).max("paper".len());
    let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())));
    out.push_str(&format!(
        "{}  {}  {}  {}  note\n",
        pad("id", 8),
        pad("match", 5),
        pad("computed", wc),
        pad("paper", wp)
    ));
    for r in &run.rows {
        let flag = match (r.matches, r.id.is_final()) {
            (true, _) => "yes",
            (false, true) => "NO",
            (false, false) => "no",
        };
        out.push_str(
            format!(
                "{}  {}  {}  {}  {}",
                pad(r.id.label(), 8),
                pad(flag, 5),
                pad(&r.computed.canonical, wc),
                pad(&r.paper.canonical, wp),
                r.note.as_deref().unwrap_or("")
            )
            .trim_end(),
        );
        out.push('\n');
    }
    out.push_str(if run.finals_match { "final theorems: all match\n" } else { "final theorems: MISMATCH\n" });
    out
}
