//! The JSON report written to standard output.

use reesdual_core::hypotheses::HypothesisReport;
use reesdual_core::poly::{print_poly, BiGrade, Poly};
use serde::Serialize;

use crate::instance::InstanceFile;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Hypotheses>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Generator>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<Fiber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bourbaki: Option<Bourbaki>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub passed: bool,
    pub scope: String,
    pub conditions: Vec<Condition>,
}

impl From<&HypothesisReport> for Hypotheses {
    fn from(r: &HypothesisReport) -> Self {
        Hypotheses {
            passed: r.passed(),
            scope: r.scope.to_string(),
            conditions: r
                .conditions
                .iter()
                .map(|c| Condition { name: c.name.clone(), passed: c.passed, witness: c.witness.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub label: String,
    pub poly: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bidegree: Option<[u32; 2]>,
}

impl Generator {
    pub fn new(label: impl Into<String>, p: &Poly) -> Self {
        let bidegree = match p.bidegree() {
            BiGrade::Homogeneous(d) => Some([d.x, d.t]),
            _ => None,
        };
        Generator { label: label.into(), poly: print_poly(p), bidegree }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fiber {
    pub poly: String,
    pub degree: u32,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Verification {
    /// Whether the generators equal `𝓛 : (x)^∞`.
    pub equal_to_saturation: bool,
    pub saturation_index: usize,
    pub index_equals_m: bool,
    /// For the matrix and operator methods, agreement with the determinant iteration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal_to_mjd: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injected: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bourbaki {
    pub seed: u64,
    pub z: Vec<Vec<String>>,
    pub y_forms: Vec<String>,
    pub ideal_instance: InstanceFile,
    pub ideal_generators: Vec<Generator>,
    pub cross_check: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}
