//! Machine-readable reports. Records are sorted by `check_id` before
//! serialisation so that output does not depend on evaluation order.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// The statement being checked.
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
}

impl CheckRecord {
    pub fn new(check_id: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: Value) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            anchor: anchor.into(),
            status: Status::from_bool(ok),
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputRecord {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn new(role: &str, path: &str, bytes: &[u8]) -> Self {
        InputRecord { role: role.into(), path: path.into(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputRecord>,
    pub checks: Vec<CheckRecord>,
    /// Command-specific summary such as a quadraticity verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    pub verdict: Status,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: Vec<InputRecord>, mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let verdict = Status::from_bool(checks.iter().all(CheckRecord::passed));
        Report { command, inputs, checks, outcome: None, verdict }
    }

    pub fn with_outcome(mut self, outcome: impl Into<String>) -> Self {
        self.outcome = Some(outcome.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        crate::files::to_json(self)
    }
}
