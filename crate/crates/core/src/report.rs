//! Pass/fail verdicts with the residual and tolerance that produced them.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// A verdict that passes iff `residual <= tolerance` (NaN never passes).
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), residual, tolerance, passed: residual <= tolerance, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tracks the largest residual seen and where it occurred.
#[derive(Clone, Debug, Default)]
pub(crate) struct MaxTracker {
    pub value: f64,
    pub location: Option<String>,
}

impl MaxTracker {
    pub fn observe(&mut self, value: f64, location: impl FnOnce() -> String) {
        if value > self.value || (value.is_nan() && !self.value.is_nan()) {
            self.value = value;
            self.location = Some(location());
        }
    }

    pub fn check(self, name: &str, tolerance: f64) -> Check {
        let mut c = Check::new(name, self.value, tolerance);
        if let Some(loc) = self.location {
            if !c.passed {
                c.detail = Some(format!("worst at {loc}"));
            }
        }
        c
    }
}
