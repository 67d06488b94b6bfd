//! Machine-readable run reports: every subcommand produces one, printed
//! either as human-readable text or as a single JSON document.

use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

pub struct ReportBuilder {
    report: RunReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        Self {
            report: RunReport {
                command: command.to_string(),
                parameters: Map::new(),
                results: Map::new(),
                checks: Vec::new(),
                wall_time_ms: 0.0,
            },
            started: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.report.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.report.results.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.report.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn finish(mut self) -> RunReport {
        self.report.wall_time_ms = self.started.elapsed().as_secs_f64() * 1e3;
        self.report
    }
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} ==\n", self.command));
        if !self.parameters.is_empty() {
            for (k, v) in &self.parameters {
                out.push_str(&format!("  {k}: {}\n", render_value(v)));
            }
        }
        for (k, v) in &self.results {
            out.push_str(&format!("{k}: {}\n", render_value(v)));
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("check {}: {status}\n", c.name));
            } else {
                out.push_str(&format!("check {}: {status} ({})\n", c.name, c.detail));
            }
        }
        out.push_str(&format!("wall time: {:.1} ms\n", self.wall_time_ms));
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
