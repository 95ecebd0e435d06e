//! Pass/fail reports shared by every verification routine.
//!
//! A report is an ordered list of named checks. A failing check carries the
//! number of violated instances and the first witness found, as a map from
//! index names to indices.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub type Witness = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub instances: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, checks: Vec<CheckOutcome>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { subject: subject.into(), passed, checks }
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self.failed().map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            format!("{}: all {} checks pass", self.subject, self.checks.len())
        } else {
            format!("{}: failed {}", self.subject, failed.join(", "))
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            write!(f, "  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name)?;
            if let Some(w) = &c.witness {
                let parts: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, " (witness {})", parts.join(", "))?;
            }
            if let Some(d) = &c.detail {
                write!(f, " {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates instances of one check, keeping the first witness.
#[derive(Debug)]
pub struct Check {
    name: String,
    instances: u64,
    failures: u64,
    witness: Option<Witness>,
    detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), instances: 0, failures: 0, witness: None, detail: None }
    }

    /// Records one instance; `witness` is evaluated only for the first failure.
    pub fn record<F>(&mut self, ok: bool, witness: F)
    where
        F: FnOnce() -> Vec<(&'static str, usize)>,
    {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness =
                    Some(witness().into_iter().map(|(k, v)| (k.to_string(), v)).collect());
            }
        }
    }

    pub fn fail_with(&mut self, detail: impl Into<String>) {
        self.instances += 1;
        self.failures += 1;
        if self.detail.is_none() {
            self.detail = Some(detail.into());
        }
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            passed: self.failures == 0,
            instances: self.instances,
            failures: self.failures,
            witness: self.witness,
            detail: self.detail,
        }
    }
}
