use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;
pub const SUITE: &str = "gctk-verify";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Exact checks report whether the compared difference is exactly zero;
/// floating cross-checks report a magnitude.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Residual {
    Exact { exact_zero: bool },
    Float(f64),
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub n: usize,
    pub parameters: serde_json::Value,
    pub status: Status,
    pub residual: Residual,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub version: String,
    pub seed: u64,
    pub n: usize,
    pub samples: usize,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mutation: Option<String>,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.check_id.as_str())
            .collect()
    }
}
