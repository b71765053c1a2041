//! Structured reports: one per scenario, collected into a versioned run
//! document.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA: &str = "divcheck-report/1";

/// Where an expected outcome comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// A value stated in the source material, with its formula as anchor.
    Published,
    /// Immediate from definitions.
    Trivial,
    /// Computed here and checked against an independent method.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    /// The worse of two statuses: fail over inconclusive over pass.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub basis: Basis,
    /// The expected outcome, as a formula.
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub expectation: Expectation,
    pub status: Status,
    pub detail: String,
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub description: String,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub status: Status,
}

/// What a step body returns: whether the expectation held, a one-line
/// explanation, and witness data.
pub struct Outcome {
    pub ok: bool,
    pub detail: String,
    pub witness: Value,
}

impl Outcome {
    pub fn new(ok: bool, detail: impl Into<String>, witness: Value) -> Self {
        Outcome { ok, detail: detail.into(), witness }
    }
}

/// Accumulates steps in order. Every step runs; errors become failed or
/// inconclusive steps.
pub struct ReportBuilder {
    report: Report,
}

impl ReportBuilder {
    pub fn new(scenario: impl Into<String>, description: impl Into<String>) -> Self {
        ReportBuilder {
            report: Report {
                scenario: scenario.into(),
                description: description.into(),
                steps: Vec::new(),
                notes: Vec::new(),
                status: Status::Pass,
            },
        }
    }

    pub fn step(&mut self, name: &str, basis: Basis, anchor: &str, body: impl FnOnce() -> Result<Outcome>) {
        debug_assert!(self.report.steps.iter().all(|s| s.name != name), "duplicate step name {name}");
        let start = Instant::now();
        let (status, detail, witness) = match body() {
            Ok(o) => (if o.ok { Status::Pass } else { Status::Fail }, o.detail, o.witness),
            Err(e @ Error::Inconclusive(_)) => (Status::Inconclusive, e.to_string(), Value::Null),
            Err(e) => (Status::Fail, e.to_string(), Value::Null),
        };
        self.report.steps.push(Step {
            name: name.to_string(),
            expectation: Expectation { basis, anchor: anchor.to_string() },
            status,
            detail,
            witness,
            elapsed_ms: Some(start.elapsed().as_millis() as u64),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.report.notes.push(text.into());
    }

    pub fn finish(mut self) -> Report {
        self.report.status = self.report.steps.iter().fold(Status::Pass, |acc, s| acc.combine(s.status));
        self.report
    }
}

impl Report {
    pub fn step(&self, name: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.name == name)
    }

    /// Plain-text summary, one line per step.
    pub fn summary(&self) -> String {
        let mut out = format!("{} [{}]: {}\n", self.scenario, self.status, self.description);
        for s in &self.steps {
            let ms = s.elapsed_ms.map(|m| format!(" ({m} ms)")).unwrap_or_default();
            out.push_str(&format!("  {:<12} {}{}: {}\n", s.status.to_string(), s.name, ms, s.detail));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

/// A complete run: configuration, all scenario reports and the overall status.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub seed: u64,
    pub config: super::Config,
    pub reports: Vec<Report>,
    pub status: Status,
}

impl RunReport {
    pub fn new(config: super::Config, reports: Vec<Report>) -> Self {
        let status = reports.iter().fold(Status::Pass, |acc, r| acc.combine(r.status));
        RunReport { schema: SCHEMA.to_string(), seed: config.seed, config, reports, status }
    }

    /// The report without timings; identical inputs give identical output.
    pub fn canonical(&self) -> RunReport {
        let mut out = self.clone();
        for r in &mut out.reports {
            for s in &mut r.steps {
                s.elapsed_ms = None;
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn canonical_json(&self) -> String {
        self.canonical().to_json()
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}
