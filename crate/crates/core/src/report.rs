//! Pass/fail records produced by the verification drivers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Result of one check: `{check, status, counterexample?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            counterexample: None,
            detail: None,
        }
    }

    pub fn fail(check: impl Into<String>, counterexample: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Fail,
            counterexample: Some(counterexample.into()),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Collapses a driver's `Result` into a report; errors count as failures.
pub(crate) fn finish<E: std::fmt::Display>(
    check: &str,
    outcome: Result<Option<String>, E>,
    detail: String,
) -> CheckReport {
    match outcome {
        Ok(None) => CheckReport::pass(check).with_detail(detail),
        Ok(Some(cx)) => CheckReport::fail(check, cx).with_detail(detail),
        Err(e) => CheckReport::fail(check, format!("error: {e}")).with_detail(detail),
    }
}

/// One row of a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

/// Full output of a verification run, ordered by check id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub version: String,
    pub checks: Vec<ReportEntry>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}
