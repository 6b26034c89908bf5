//! Batch verification: named suites of checks, each tied to a statement of
//! the source by its label, assembled into a deterministic report.

mod suites;

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use suites::{BettiSuite, FqSuite, PicardSuite, SliceSuite, StabilitySuite};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("suite `{0}` registered twice")]
    Duplicate(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_anchor: &'static str,
    pub status: Status,
    pub payload: Value,
}

impl CheckResult {
    pub fn new(id: impl Into<String>, anchor: &'static str, ok: bool, payload: Value) -> Self {
        CheckResult {
            id: id.into(),
            paper_anchor: anchor,
            status: Status::from_bool(ok),
            payload,
        }
    }

    pub fn skipped(id: impl Into<String>, anchor: &'static str, payload: Value) -> Self {
        CheckResult {
            id: id.into(),
            paper_anchor: anchor,
            status: Status::Skipped,
            payload,
        }
    }

    /// A check whose computation itself failed.
    pub fn error(id: impl Into<String>, anchor: &'static str, err: impl std::fmt::Display) -> Self {
        Self::new(id, anchor, false, Value::String(format!("error: {err}")))
    }
}

/// A named group of checks. Implementations must be pure so suites can run
/// concurrently.
pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self) -> Vec<CheckResult>;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    /// True iff every non-skipped check passed.
    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.status != Status::Fail)
    }

    pub fn checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.suites.iter().flat_map(|s| s.checks.iter())
    }

    pub fn find(&self, id: &str) -> Option<&CheckResult> {
        self.checks().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            writeln!(out, "== {}", s.name).unwrap();
            for c in &s.checks {
                writeln!(
                    out,
                    "[{}] {} ({}) {}",
                    c.status.label(),
                    c.id,
                    c.paper_anchor,
                    c.payload
                )
                .unwrap();
            }
        }
        let (mut pass, mut fail, mut skip) = (0, 0, 0);
        for c in self.checks() {
            match c.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::Skipped => skip += 1,
            }
        }
        writeln!(out, "{pass} passed, {fail} failed, {skip} skipped").unwrap();
        out
    }
}

/// Suites by name, in registration order.
pub struct Registry {
    suites: Vec<Box<dyn Suite>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { suites: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(StabilitySuite)).unwrap();
        r.register(Box::new(FqSuite)).unwrap();
        r.register(Box::new(SliceSuite)).unwrap();
        r.register(Box::new(BettiSuite)).unwrap();
        r.register(Box::new(PicardSuite)).unwrap();
        r
    }

    pub fn register(&mut self, suite: Box<dyn Suite>) -> Result<(), VerifyError> {
        if self.get(suite.name()).is_some() {
            return Err(VerifyError::Duplicate(suite.name()));
        }
        self.suites.push(suite);
        Ok(())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    /// Resolves `"all"` or a single suite name.
    pub fn select(&self, name: &str) -> Result<Vec<&dyn Suite>, VerifyError> {
        if name == "all" {
            return Ok(self.suites.iter().map(|s| s.as_ref()).collect());
        }
        self.get(name)
            .map(|s| vec![s])
            .ok_or_else(|| VerifyError::UnknownSuite(name.to_string()))
    }

    pub fn run(&self, name: &str, parallel: bool) -> Result<Report, VerifyError> {
        let selected = self.select(name)?;
        let results: Vec<Vec<CheckResult>> = if parallel {
            std::thread::scope(|scope| {
                let handles: Vec<_> = selected
                    .iter()
                    .map(|s| scope.spawn(move || s.run()))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("suite panicked"))
                    .collect()
            })
        } else {
            selected.iter().map(|s| s.run()).collect()
        };
        Ok(Report {
            version: REPORT_VERSION,
            suites: selected
                .iter()
                .zip(results)
                .map(|(s, checks)| SuiteReport {
                    name: s.name(),
                    checks,
                })
                .collect(),
        })
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    struct Fixed(&'static str, bool);

    impl Suite for Fixed {
        fn name(&self) -> &'static str {
            self.0
        }
        fn run(&self) -> Vec<CheckResult> {
            vec![
                CheckResult::new(format!("{}.a", self.0), "lem:stabilizers", self.1, json!(1)),
                CheckResult::skipped(format!("{}.b", self.0), "prop:mmp", Value::Null),
            ]
        }
    }

    #[test]
    fn registry_selection() {
        let mut r = Registry::empty();
        r.register(Box::new(Fixed("x", true))).unwrap();
        r.register(Box::new(Fixed("y", false))).unwrap();
        assert_eq!(
            r.register(Box::new(Fixed("x", true))),
            Err(VerifyError::Duplicate("x"))
        );
        assert!(r.run("x", false).unwrap().passed());
        assert!(!r.run("all", true).unwrap().passed());
        assert_eq!(
            r.run("z", false).map(|_| ()),
            Err(VerifyError::UnknownSuite("z".into()))
        );
        assert_eq!(r.run("all", true).unwrap(), r.run("all", false).unwrap());
    }

    #[test]
    fn standard_names() {
        assert_eq!(
            Registry::standard().names(),
            ["stability", "fq", "slice", "betti", "picard"]
        );
    }

    #[test]
    fn status_serialization() {
        let c = CheckResult::skipped("a", "prop:mmp", Value::Null);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["status"], "skipped");
        assert_eq!(v["paper_anchor"], "prop:mmp");
    }
}
