//! Pass/fail records shared by all verification routines.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Summary on success, counterexample on failure.
    pub witness: String,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: witness.into(),
        }
    }

    pub fn pass(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check::new(name, true, witness)
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check::new(name, false, witness)
    }

    pub fn inconclusive(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Inconclusive,
            witness: witness.into(),
        }
    }

    /// Passes if `err` is `None`, otherwise fails with the counterexample.
    pub fn from_counterexample(
        name: impl Into<String>,
        err: Option<String>,
        summary: impl Into<String>,
    ) -> Self {
        match err {
            None => Check::pass(name, summary),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// True if no check failed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}
