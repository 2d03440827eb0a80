//! Check records and their JSON, CSV and markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use depthzero::uniqueness::ThresholdReport;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::config::{Config, Format};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: &'static str,
    pub params: BTreeMap<String, Value>,
    pub outcome: Outcome,
    /// Counterexample, witness or summary; inputs are serialised so a failure
    /// can be replayed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<SkipReason>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    Budget,
    NotApplicable,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: &'static str) -> Self {
        CheckRecord { id: id.into(), anchor, params: BTreeMap::new(), outcome: Outcome::Pass, witness: None, skip_reason: None }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("parameter serialises"));
        self
    }

    pub fn outcome(mut self, pass: bool) -> Self {
        self.outcome = if pass { Outcome::Pass } else { Outcome::Fail };
        self
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = Some(serde_json::to_value(w).expect("witness serialises"));
        self
    }

    pub fn skipped(mut self, reason: SkipReason, detail: impl Into<String>) -> Self {
        self.outcome = Outcome::Skipped;
        self.skip_reason = Some(reason);
        self.witness = Some(Value::String(detail.into()));
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    /// Wall time per check id, in milliseconds; kept out of the main report.
    pub timings: Vec<(String, f64)>,
    pub thresholds: Vec<ThresholdReport>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == Outcome::Fail)
    }

    pub fn over_budget(&self) -> bool {
        self.checks.iter().any(|c| c.skip_reason == Some(SkipReason::Budget))
    }

    /// Process exit status for the run.
    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else if self.over_budget() {
            3
        } else {
            0
        }
    }
}

#[derive(Debug, Error)]
#[error("writing {path}: {source}")]
pub struct EmitError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

fn write(path: PathBuf, contents: &[u8]) -> Result<PathBuf, EmitError> {
    std::fs::write(&path, contents).map_err(|source| EmitError { path: path.clone(), source })?;
    Ok(path)
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    config_echo: BTreeMap<String, Value>,
    checks: &'a [CheckRecord],
}

pub fn to_json(report: &Report, config: &Config) -> String {
    let doc = JsonReport { schema_version: SCHEMA_VERSION, config_echo: config.echo(), checks: &report.checks };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
    s.push('\n');
    s
}

pub fn metadata_json(report: &Report, started_unix: u64) -> String {
    let timings: BTreeMap<&str, f64> = report.timings.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "started_unix": started_unix,
        "crate_version": env!("CARGO_PKG_VERSION"),
        "wall_ms": timings,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("metadata serialises");
    s.push('\n');
    s
}

pub fn thresholds_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "q", "y", "total", "ratio", "bound", "holds"]).expect("in-memory write");
    for t in &report.thresholds {
        for r in &t.rows {
            w.write_record([
                t.kind.to_string(),
                r.q.to_string(),
                r.y.to_string(),
                r.total.to_string(),
                format!("{:.6}", r.ratio()),
                format!("{:.6}", r.bound()),
                r.holds.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii output")
}

fn md_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    s.replace('|', "\\|")
}

pub fn to_markdown(report: &Report) -> String {
    let mut s = String::from("# Verification report\n\n| check | anchor | outcome | parameters | witness |\n|---|---|---|---|---|\n");
    for c in &report.checks {
        let params = c.params.iter().map(|(k, v)| format!("{k}={}", md_cell(v))).collect::<Vec<_>>().join(", ");
        let witness = c.witness.as_ref().map(md_cell).unwrap_or_default();
        let _ = writeln!(s, "| {} | {} | {} | {} | {} |", c.id, c.anchor, c.outcome.label(), params, witness);
    }
    let pass = report.checks.iter().filter(|c| c.outcome == Outcome::Pass).count();
    let _ = writeln!(s, "\n{pass} of {} checks passed.", report.checks.len());
    for t in &report.thresholds {
        let min = t.empirical_threshold.map(|q| q.to_string()).unwrap_or_else(|| "none".into());
        let _ = writeln!(s, "\n{}: inequality holds for every tested q >= {min} (q <= {}).", t.kind, t.q_max);
    }
    s
}

/// Write the requested formats into `dir`; `metadata.json` is always written.
pub fn emit(report: &Report, config: &Config, dir: &Path, started_unix: u64) -> Result<Vec<PathBuf>, EmitError> {
    std::fs::create_dir_all(dir).map_err(|source| EmitError { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    for f in &config.formats {
        written.push(match f {
            Format::Json => write(dir.join("report.json"), to_json(report, config).as_bytes())?,
            Format::Csv => write(dir.join("thresholds.csv"), thresholds_csv(report).as_bytes())?,
            Format::Md => write(dir.join("report.md"), to_markdown(report).as_bytes())?,
        });
    }
    written.push(write(dir.join("metadata.json"), metadata_json(report, started_unix).as_bytes())?);
    Ok(written)
}
