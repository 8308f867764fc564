use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// The outcome of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    /// Exact results, keyed by name.
    pub values: Map<String, Value>,
    /// First counterexample; present whenever `passed` is false.
    pub witness: Option<Value>,
    /// Term table, filled on failure or with `--verbose`.
    pub ledger: Vec<Value>,
    /// Nested reports, for `selftest`.
    pub children: Vec<Report>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), passed: true, values: Map::new(), witness: None, ledger: Vec::new(), children: Vec::new() }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    /// Marks the report failed with `witness`, keeping the first one.
    pub fn fail(&mut self, witness: Value) {
        if self.passed {
            self.passed = false;
            self.witness = Some(witness);
        }
    }

    pub fn child(&mut self, r: Report) {
        if !r.passed {
            let w = json!({"check": r.command, "witness": r.witness.clone().unwrap_or(Value::Null)});
            self.fail(w);
        }
        self.children.push(r);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("passed".into(), json!(self.passed));
        m.insert("values".into(), Value::Object(self.values.clone()));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if !self.ledger.is_empty() {
            m.insert("ledger".into(), Value::Array(self.ledger.clone()));
        }
        if !self.children.is_empty() {
            m.insert("checks".into(), Value::Array(self.children.iter().map(|c| c.to_json()).collect()));
        }
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = writeln!(out, "{pad}{}: {}", self.command, if self.passed { "PASS" } else { "FAIL" });
        for (k, v) in &self.values {
            let _ = writeln!(out, "{pad}  {k} = {}", show(v));
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "{pad}  witness = {}", show(w));
        }
        for (i, row) in self.ledger.iter().enumerate() {
            let _ = writeln!(out, "{pad}  [{i}] {}", show(row));
        }
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
