//! Expected-value manifests: a JSON array of records
//! `{name?, command, args, expected, tolerance?}`.
//!
//! `args` maps flag names to values (`true` for bare switches, arrays for
//! repeated flags). `expected` maps JSON pointers into the command's
//! `result` to the values found there. Integers, strings, booleans and
//! arrays compare exactly; a float on either side compares within
//! `tolerance` (default [`DEFAULT_TOLERANCE`]).

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::{run_args, CliError, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    #[serde(default)]
    pub name: Option<String>,
    pub command: String,
    #[serde(default)]
    pub args: Map<String, Value>,
    pub expected: Map<String, Value>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

impl Record {
    fn label(&self, index: usize) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("#{index} {}", self.command))
    }

    fn argv(&self) -> Result<Vec<String>> {
        let mut argv = vec!["mstd".to_string(), self.command.clone()];
        for (flag, value) in &self.args {
            let flag = format!("--{}", flag.replace('_', "-"));
            let values = match value {
                Value::Array(items) => items.clone(),
                other => vec![other.clone()],
            };
            for v in values {
                match v {
                    Value::Bool(true) => argv.push(flag.clone()),
                    Value::Bool(false) => {}
                    Value::String(s) => argv.extend([flag.clone(), s]),
                    Value::Number(n) => argv.extend([flag.clone(), n.to_string()]),
                    other => {
                        return Err(CliError::Manifest(format!(
                            "unsupported value {other} for {flag}"
                        )))
                    }
                }
            }
        }
        Ok(argv)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordFailure {
    pub record: String,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionSummary {
    pub records: usize,
    pub passed: usize,
    pub failures: Vec<RecordFailure>,
    pub warnings: Vec<String>,
}

pub fn parse_manifest(text: &str) -> Result<Vec<Record>> {
    serde_json::from_str(text).map_err(|e| CliError::Manifest(e.to_string()))
}

pub fn run_manifest(path: &Path) -> Result<RegressionSummary> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ManifestIo {
        path: path.display().to_string(),
        source,
    })?;
    Ok(run_records(&parse_manifest(&text)?))
}

pub fn run_records(records: &[Record]) -> RegressionSummary {
    let mut failures = Vec::new();
    let mut warnings = Vec::new();
    if records.is_empty() {
        warnings.push("manifest has no records".to_string());
    }
    for (i, rec) in records.iter().enumerate() {
        let reasons = check_record(rec);
        if !reasons.is_empty() {
            failures.push(RecordFailure {
                record: rec.label(i),
                reasons,
            });
        }
    }
    RegressionSummary {
        records: records.len(),
        passed: records.len() - failures.len(),
        failures,
        warnings,
    }
}

fn check_record(rec: &Record) -> Vec<String> {
    if rec.command == "regression" {
        return vec!["records may not run the regression command".into()];
    }
    let env = match rec.argv().and_then(run_args) {
        Ok(env) => env,
        Err(e) => return vec![format!("command failed: {e}")],
    };
    let tol = rec.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let mut reasons = Vec::new();
    for (pointer, want) in &rec.expected {
        match env.result.pointer(pointer) {
            None => reasons.push(format!("{pointer}: missing from result")),
            Some(got) if !matches(got, want, tol) => {
                reasons.push(format!("{pointer}: expected {want}, got {got}"))
            }
            Some(_) => {}
        }
    }
    reasons
}

fn matches(got: &Value, want: &Value, tol: f64) -> bool {
    match (got, want) {
        (Value::Number(g), Value::Number(w)) => {
            if g.is_f64() || w.is_f64() {
                let (g, w) = (
                    g.as_f64().unwrap_or(f64::NAN),
                    w.as_f64().unwrap_or(f64::NAN),
                );
                (g - w).abs() <= tol
            } else {
                g == w
            }
        }
        (Value::Array(g), Value::Array(w)) => {
            g.len() == w.len() && g.iter().zip(w).all(|(a, b)| matches(a, b, tol))
        }
        (Value::Object(g), Value::Object(w)) => {
            g.len() == w.len()
                && w.iter()
                    .all(|(k, b)| g.get(k).is_some_and(|a| matches(a, b, tol)))
        }
        _ => got == want,
    }
}
