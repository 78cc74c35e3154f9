//! Verification reports shared by every suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One failing instance inside a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub parameters: String,
    pub residual: String,
}

/// A single identity evaluated over a parameter grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub identity: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    pub cases: usize,
    pub failed: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Keeps reports readable when a sweep breaks everywhere.
pub const MAX_LISTED_FAILURES: usize = 20;

impl Check {
    pub fn new(identity: &str, anchor: &str) -> Self {
        Check {
            identity: identity.to_string(),
            anchor: anchor.to_string(),
            parameters: BTreeMap::new(),
            cases: 0,
            failed: 0,
            status: Status::Pass,
            failures: Vec::new(),
            note: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one evaluated case; `residual` is `None` when the identity holds.
    pub fn record(&mut self, parameters: impl FnOnce() -> String, residual: Option<String>) {
        self.cases += 1;
        if let Some(r) = residual {
            self.status = Status::Fail;
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(Failure { parameters: parameters(), residual: r });
            }
        }
    }

    /// Records a boolean outcome with a textual residual on failure.
    pub fn expect(&mut self, ok: bool, parameters: impl FnOnce() -> String, residual: impl FnOnce() -> String) {
        let r = if ok { None } else { Some(residual()) };
        self.record(parameters, r);
    }

    pub fn absorb(&mut self, other: Check) {
        self.cases += other.cases;
        self.failed += other.failed;
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
        for f in other.failures {
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub grid: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), grid: BTreeMap::new(), checks: Vec::new(), timing_ms: None }
    }

    pub fn grid(mut self, key: &str, value: impl ToString) -> Self {
        self.grid.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        if !self.grid.is_empty() {
            let grid: Vec<String> = self.grid.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "grid: {}", grid.join(" "));
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "[{status}] {:<28} {:<34} cases={:<6} failed={:<4} {}",
                c.identity,
                c.anchor,
                c.cases,
                c.failed,
                params.join(" ")
            );
            if let Some(n) = &c.note {
                let _ = writeln!(out, "       note: {n}");
            }
            for f in &c.failures {
                let _ = writeln!(out, "       at {}: {}", f.parameters, f.residual);
            }
        }
        let _ = writeln!(
            out,
            "summary: {} checks, {} cases, {} failing",
            self.checks.len(),
            self.total_cases(),
            self.failures()
        );
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "elapsed: {t} ms");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_case_marks_check_and_report() {
        let mut c = Check::new("demo", "anchor").param("k", 2);
        c.record(|| "k=0".into(), None);
        c.record(|| "k=1".into(), Some("x".into()));
        assert_eq!(c.cases, 2);
        assert_eq!(c.failed, 1);
        assert!(!c.passed());
        let mut r = Report::new("s");
        r.push(c);
        assert_eq!(r.failures(), 1);
        assert!(r.to_json().contains("\"status\": \"fail\""));
        assert!(r.to_text().contains("[FAIL]"));
    }
}
