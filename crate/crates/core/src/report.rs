//! Verification reports: one entry per checked tuple, merged and sorted
//! deterministically regardless of worker scheduling.

use serde_json::{json, Value};

use crate::algebra::GradedSeries;

#[derive(Debug, Clone)]
pub struct CheckEntry {
    /// what was checked: "identity", "pair", "triple", "gluing", ...
    pub kind: String,
    /// the chart tuple (or sample label) the check ran on
    pub tuple: Vec<String>,
    pub pass: bool,
    /// the sample could not be drawn inside the domain within the retry budget
    pub skipped: bool,
    /// first offending generator or matrix position on failure
    pub offending: Option<String>,
    /// residual series witnessing the failure
    pub residual: Option<GradedSeries>,
}

impl CheckEntry {
    pub fn pass(kind: &str, tuple: Vec<String>) -> Self {
        CheckEntry {
            kind: kind.into(),
            tuple,
            pass: true,
            skipped: false,
            offending: None,
            residual: None,
        }
    }

    pub fn fail(
        kind: &str,
        tuple: Vec<String>,
        offending: Option<String>,
        residual: Option<GradedSeries>,
    ) -> Self {
        CheckEntry {
            kind: kind.into(),
            tuple,
            pass: false,
            skipped: false,
            offending,
            residual,
        }
    }

    pub fn skip(kind: &str, tuple: Vec<String>, why: &str) -> Self {
        CheckEntry {
            kind: kind.into(),
            tuple,
            pass: true,
            skipped: true,
            offending: Some(why.into()),
            residual: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("kind".into(), Value::from(self.kind.clone()));
        obj.insert(
            "tuple".into(),
            Value::Array(self.tuple.iter().map(|t| Value::from(t.clone())).collect()),
        );
        obj.insert("pass".into(), Value::from(self.pass));
        if self.skipped {
            obj.insert("skipped".into(), Value::from(true));
        }
        if let Some(o) = &self.offending {
            obj.insert("offending".into(), Value::from(o.clone()));
        }
        obj.insert(
            "residual".into(),
            self.residual
                .as_ref()
                .map(|r| r.to_json())
                .unwrap_or(Value::Null),
        );
        Value::Object(obj)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.into(),
            entries: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn checks(&self) -> usize {
        self.entries.len()
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }

    pub fn skipped(&self) -> usize {
        self.entries.iter().filter(|e| e.skipped).count()
    }

    /// Deterministic order: by kind, then tuple.
    pub fn sort(&mut self) {
        self.entries
            .sort_by(|a, b| a.kind.cmp(&b.kind).then_with(|| a.tuple.cmp(&b.tuple)));
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "pass": self.passed(),
            "checks": self.checks(),
            "failures": self.failures(),
            "skipped": self.skipped(),
            "entries": self.entries.iter().map(|e| e.to_json()).collect::<Vec<Value>>(),
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let state = if e.skipped {
                "SKIP"
            } else if e.pass {
                "PASS"
            } else {
                "FAIL"
            };
            out.push_str(&format!("[{state}] {} ({})", e.kind, e.tuple.join(", ")));
            if let Some(o) = &e.offending {
                out.push_str(&format!(" at {o}"));
            }
            if let Some(r) = &e.residual {
                out.push_str(&format!(" residual {}", r.display()));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "suite {}: {}/{} checks passed{}\n",
            self.suite,
            self.checks() - self.failures(),
            self.checks(),
            if self.skipped() > 0 {
                format!(" ({} skipped)", self.skipped())
            } else {
                String::new()
            }
        ));
        out
    }
}
