//! Check records and their text/JSON renderings.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<String>, elapsed: Duration) -> Self {
        CheckRecord { name: name.into(), pass, witness, elapsed }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<CheckRecord>,
    pub artifacts: Vec<String>,
    /// Extra machine-readable output: tables, witnesses, parameters.
    pub data: BTreeMap<String, Value>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format `{other}` (text or json)"))),
        }
    }
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    /// Times `f` and records its verdict; `f` returns a witness on failure.
    pub fn check(&mut self, name: &str, f: impl FnOnce() -> Result<Option<String>>) -> Result<bool> {
        let t = std::time::Instant::now();
        let witness = f()?;
        let pass = witness.is_none();
        self.push(CheckRecord::new(name, pass, witness, t.elapsed()));
        Ok(pass)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Timings are left out so identical runs serialize identically.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "witness": c.witness}))
            .collect();
        json!({
            "command": self.command,
            "pass": self.passed(),
            "checks": checks,
            "artifacts": self.artifacts,
            "data": self.data,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.command.is_empty() {
            out.push_str(&format!("{}\n", self.command));
        }
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{verdict}] {} ({:.3}s)", c.name, c.elapsed.as_secs_f64()));
            if let Some(w) = &c.witness {
                out.push_str(&format!(": {w}"));
            }
            out.push('\n');
        }
        for (k, v) in &self.data {
            match v {
                Value::String(s) => out.push_str(&format!("  {k}: {s}\n")),
                Value::Number(_) | Value::Bool(_) => out.push_str(&format!("  {k}: {v}\n")),
                _ => out.push_str(&format!("  {k}: <{} in JSON output>\n", kind(v))),
            }
        }
        for a in &self.artifacts {
            out.push_str(&format!("  wrote {a}\n"));
        }
        let total = self.checks.len();
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!("{passed}/{total} checks passed\n"));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Array(_) => "array",
        Value::Object(_) => "object",
        _ => "value",
    }
}

/// Writes the report to `out`, or to stdout.
pub fn emit_report(r: &Report, format: Format, out: Option<&Path>) -> Result<()> {
    let text = r.render(format);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::default();
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["checks"], json!([]));
        assert_eq!(v["pass"], json!(true));
    }

    #[test]
    fn json_ignores_timing_and_sorts_keys() {
        let mut a = Report::new("check");
        a.push(CheckRecord::new("cocycle", false, Some("x1 ⊗ x2 ⊗ x1".into()), Duration::from_millis(3)));
        a.data.insert("zeta".into(), json!(1));
        a.data.insert("alpha".into(), json!(2));
        let mut b = a.clone();
        b.checks[0].elapsed = Duration::from_secs(9);
        assert_eq!(a.render(Format::Json), b.render(Format::Json));
        let s = a.render(Format::Json);
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.contains("x1 ⊗ x2 ⊗ x1"));
        assert!(a.to_text().contains("[FAIL] cocycle"));
    }
}
