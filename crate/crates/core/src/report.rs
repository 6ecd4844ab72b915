//! Pass/fail records produced by the verifiers.

use serde::{Deserialize, Serialize};

/// Witnesses kept per report; the total count is always exact.
pub const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub cases: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            cases: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    /// Counts one case; records a witness when `ok` is false.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(witness);
        }
    }

    /// Appends `other`'s counts and witnesses, keeping order.
    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.violation_count += other.violation_count;
        let room = MAX_WITNESSES.saturating_sub(self.violations.len());
        self.violations
            .extend(other.violations.into_iter().take(room));
    }
}
