//! Reports: titled text sections with structured payloads, plus check records.

use std::fmt::Write as _;

use mckay_core::report::{Check, Status};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub table: Vec<String>,
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub fixture: String,
    pub seed: u64,
    pub sections: Vec<Section>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: Vec<String>, fixture: impl Into<String>, seed: u64) -> Self {
        Report {
            command,
            fixture: fixture.into(),
            seed,
            sections: Vec::new(),
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn section(&mut self, title: impl Into<String>, table: Vec<String>, data: impl Serialize) {
        let data = serde_json::to_value(data).expect("report payloads serialize");
        self.sections.push(Section {
            title: title.into(),
            table,
            data,
        });
    }

    pub fn checks(&mut self, prefix: &str, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks.into_iter().map(|mut c| {
            if !prefix.is_empty() {
                c.name = format!("{prefix}: {}", c.name);
            }
            c
        }));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} [{}]", self.command.join(" "), self.fixture);
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} ==", s.title);
            for line in &s.table {
                let _ = writeln!(out, "  {line}");
            }
        }
        let _ = writeln!(out, "\n== checks ==");
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            let _ = writeln!(out, "  {tag:<12} {}  [{}]", c.name, c.witness);
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "\n{passed}/{} checks passed", self.checks.len());
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "elapsed: {t} ms");
        }
        out
    }
}
