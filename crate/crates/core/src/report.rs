//! Verification reports and their csv, json and plain renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "operad-forge/1";

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub arity: Option<usize>,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    /// Not run because it is above the configured bounds.
    pub skipped: bool,
    /// Stopped by a resource bound.
    #[serde(skip)]
    pub resource: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(
        check: impl Into<String>,
        arity: Option<usize>,
        expected: impl Serialize,
        actual: impl Serialize,
    ) -> Self {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        Check {
            check: check.into(),
            arity,
            pass: expected == actual,
            expected,
            actual,
            skipped: false,
            resource: false,
            witness: None,
        }
    }

    /// A check decided by a predicate rather than by comparing values.
    pub fn holds(check: impl Into<String>, arity: Option<usize>, pass: bool) -> Self {
        Check::new(check, arity, true, pass)
    }

    pub fn skipped(check: impl Into<String>, arity: Option<usize>, reason: impl Into<String>) -> Self {
        Check {
            check: check.into(),
            arity,
            expected: Value::Null,
            actual: Value::Null,
            pass: true,
            skipped: true,
            resource: false,
            witness: Some(reason.into()),
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        if !self.pass {
            self.witness = Some(witness.into());
        }
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Set when a check hit a resource bound it was asked to run past.
    pub resource_exceeded: bool,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.resource_exceeded |= other.resource_exceeded;
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "pass": self.passed(),
            "checks": self.checks,
        })
    }

    /// Columns: `check,arity,expected,actual,pass,skipped,witness`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,arity,expected,actual,pass,skipped,witness\n");
        for c in &self.checks {
            let arity = c.arity.map(|n| n.to_string()).unwrap_or_default();
            let fields = [
                c.check.clone(),
                arity,
                cell(&c.expected),
                cell(&c.actual),
                c.pass.to_string(),
                c.skipped.to_string(),
                c.witness.clone().unwrap_or_default(),
            ];
            let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match (c.skipped, c.pass) {
                (true, _) => "SKIP",
                (false, true) => "PASS",
                (false, false) => "FAIL",
            };
            let arity = c.arity.map(|n| format!(" n={n}")).unwrap_or_default();
            let _ = write!(out, "{status} {}{arity}", c.check);
            if !c.skipped {
                let _ = write!(out, ": expected {}, got {}", cell(&c.expected), cell(&c.actual));
            }
            if let Some(w) = &c.witness {
                let _ = write!(out, " ({w})");
            }
            out.push('\n');
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        let skipped = self.checks.iter().filter(|c| c.skipped).count();
        let _ = writeln!(out, "{} checks, {failed} failed, {skipped} skipped", total);
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => format!(
                "{}\n",
                serde_json::to_string_pretty(&self.to_json()).expect("serializable")
            ),
            Format::Plain => self.to_plain(),
        }
    }
}
