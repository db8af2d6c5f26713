//! The JSON report envelope and the per-command verdict shapes.
//!
//! Field order is fixed by the struct declarations; `timing_ms` is
//! always last so reports stay byte-comparable after stripping it.
//! Every rational rides as its canonical string, never as a float.

use serde::Serialize;

use reachrec::specfile::SpecFile;

pub const TOOL: &str = "reachrec";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Report<V: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub verdict: V,
    pub timing_ms: u128,
}

impl<V: Serialize> Report<V> {
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[derive(Serialize)]
pub struct EvalVerdict {
    pub terms: Vec<String>,
}

/// Per-method first-hit indices, reported when every mechanism runs.
/// `null` means that method found no hit within the depth bound.
#[derive(Serialize)]
pub struct MethodOutcomes {
    pub oracle: Option<usize>,
    pub product: Option<usize>,
    pub cramer: Option<usize>,
}

#[derive(Serialize)]
pub struct ReachVerdict {
    pub method: &'static str,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<MethodOutcomes>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    pub caveat_flag: bool,
    pub integer_exempt: bool,
    pub caveat_window: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub product_bits: Option<u64>,
}

#[derive(Serialize)]
pub struct OmegaVerdict {
    pub index: usize,
    pub omega: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmented_matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_det: Option<String>,
}

#[derive(Serialize)]
pub struct CollapseJson {
    #[serde(rename = "const")]
    pub constant: String,
    pub cross: Vec<Vec<String>>,
    pub linear: Vec<String>,
}

#[derive(Serialize)]
pub struct AssignmentJson {
    pub index: usize,
    pub witness: Vec<String>,
    pub collapse: CollapseJson,
}

#[derive(Serialize)]
pub struct IndexVerdictJson {
    pub index: usize,
    pub cramer_value: String,
    pub reaches: bool,
    pub forcing_rank: usize,
    pub forced_trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct CertifyVerdict {
    pub sum_can_equal_one: bool,
    pub reached_indices: Vec<usize>,
    pub indices: Vec<IndexVerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<AssignmentJson>,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct RandomSpecJson {
    pub index: usize,
    pub order: usize,
    pub all_pass: bool,
    pub failed: Vec<&'static str>,
}

#[derive(Serialize)]
pub struct VerifyVerdict {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_specs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub specs: Option<Vec<RandomSpecJson>>,
    pub all_pass: bool,
}
