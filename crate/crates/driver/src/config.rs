//! Run configuration: defaults, then a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use depthzero::arith::{odd_prime_powers, prime_power};
use depthzero::localmodel::EtaBranch;
use depthzero::TorusKind;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("config key `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("config file {path}: {message}")]
    File { path: String, message: String },
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Summation {
    /// The whole rational Weyl group.
    Full,
    /// Only the identity.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub q: Vec<u64>,
    pub q_max: u64,
    pub kinds: Vec<TorusKind>,
    pub eta_branches: Vec<EtaBranch>,
    /// Cyclotomic order used for dual-group matrices.
    pub dual_order: u64,
    pub summation: Summation,
    pub epsilon: i64,
    pub jobs: usize,
    pub formats: Vec<Format>,
    pub out: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
    /// Residue-field size for the invariance checks.
    pub invariance_q: u64,
    pub lift_samples: usize,
    pub reps_per_class: usize,
    /// Weyl-sum evaluations allowed per identity sweep.
    pub max_evaluations: u128,
    /// Weyl-sum evaluations before the rigidity check samples.
    pub rigidity_cap: u128,
    pub threshold_limit: u64,
    pub table_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            q: vec![3, 5, 7, 9],
            q_max: 200,
            kinds: TorusKind::ALL.to_vec(),
            eta_branches: vec![EtaBranch::Plus],
            dual_order: depthzero::dualgroup::DEFAULT_ORDER,
            summation: Summation::Full,
            epsilon: 1,
            jobs: 0,
            formats: vec![Format::Json, Format::Csv, Format::Md],
            out: PathBuf::from("depthzero-out"),
            cache_dir: None,
            seed: 0,
            invariance_q: 3,
            lift_samples: 200,
            reps_per_class: 100,
            max_evaluations: 50_000_000,
            rigidity_cap: depthzero::uniqueness::DEFAULT_EVAL_CAP,
            threshold_limit: depthzero::uniqueness::DEFAULT_SCAN_LIMIT,
            table_budget: 200_000_000,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.trim().replace('_', "").parse().map_err(|_| invalid(key, format!("`{v}` is not a valid number")))
}

fn odd_q(key: &str, q: u64) -> Result<u64, ConfigError> {
    match prime_power(q) {
        Some((p, _)) if p != 2 => Ok(q),
        _ => Err(invalid(key, format!("{q} is not an odd prime power"))),
    }
}

/// `3,5,7` or an inclusive range `3-9` (odd prime powers in it).
pub fn parse_q_list(key: &str, v: &str) -> Result<Vec<u64>, ConfigError> {
    let mut out = Vec::new();
    for part in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = part.split_once('-') {
            let (lo, hi): (u64, u64) = (parse_num(key, lo)?, parse_num(key, hi)?);
            if lo > hi {
                return Err(invalid(key, format!("empty range {part}")));
            }
            out.extend(odd_prime_powers(hi).into_iter().filter(|&q| q >= lo));
        } else {
            out.push(odd_q(key, parse_num(key, part)?)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err(invalid(key, "no residue field sizes given"));
    }
    Ok(out)
}

impl Config {
    /// Set one key from its textual value.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let v = value.trim();
        match key {
            "q" => self.q = parse_q_list(key, v)?,
            "q_max" => self.q_max = parse_num(key, v)?,
            "kind" => {
                self.kinds = match v {
                    "1" => vec![TorusKind::T1],
                    "2" => vec![TorusKind::T2],
                    "both" => TorusKind::ALL.to_vec(),
                    _ => return Err(invalid(key, "expected 1, 2 or both")),
                }
            }
            "eta_branch" => {
                self.eta_branches = match v {
                    "plus" => vec![EtaBranch::Plus],
                    "minus" => vec![EtaBranch::Minus],
                    "both" => EtaBranch::BOTH.to_vec(),
                    _ => return Err(invalid(key, "expected plus, minus or both")),
                }
            }
            "dual_order" => self.dual_order = parse_num(key, v)?,
            "summation" => {
                self.summation = match v {
                    "full" => Summation::Full,
                    "trivial" => Summation::Trivial,
                    _ => return Err(invalid(key, "expected full or trivial")),
                }
            }
            "epsilon" => self.epsilon = parse_num(key, v)?,
            "jobs" => self.jobs = parse_num(key, v)?,
            "format" => {
                let mut f = Vec::new();
                for part in v.split(',').map(str::trim) {
                    f.push(match part {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        "md" => Format::Md,
                        other => return Err(invalid(key, format!("unknown format `{other}`"))),
                    });
                }
                f.sort();
                f.dedup();
                self.formats = f;
            }
            "out" => self.out = PathBuf::from(v),
            "cache_dir" => self.cache_dir = Some(PathBuf::from(v)),
            "seed" => self.seed = parse_num(key, v)?,
            "invariance_q" => self.invariance_q = odd_q(key, parse_num(key, v)?)?,
            "lift_samples" => self.lift_samples = parse_num(key, v)?,
            "reps_per_class" => self.reps_per_class = parse_num(key, v)?,
            "max_evaluations" => self.max_evaluations = parse_num(key, v)?,
            "rigidity_cap" => self.rigidity_cap = parse_num(key, v)?,
            "threshold_limit" => self.threshold_limit = parse_num(key, v)?,
            "table_budget" => self.table_budget = parse_num(key, v)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Apply every `key = value` line; `#` and `;` start comments, and
    /// `[section]` headers are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for line in text.lines() {
            let line = line.split(['#', ';']).next().unwrap_or("").trim();
            if line.is_empty() || (line.starts_with('[') && line.ends_with(']')) {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| invalid(line, "expected `key = value`"))?;
            self.apply(&k.trim().replace('-', "_"), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::File { path: path.display().to_string(), message: e.to_string() })?;
        self.apply_text(&text)
    }

    /// Checks that need more than one key, run before any campaign.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.kinds.is_empty() {
            return Err(invalid("kind", "no torus selected"));
        }
        if self.dual_order == 0 || !self.dual_order.is_multiple_of(4) {
            return Err(invalid("dual_order", "must be a positive multiple of 4"));
        }
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(invalid("epsilon", "must be 1 or -1"));
        }
        if self.q_max < 3 {
            return Err(invalid("q_max", "must be at least 3"));
        }
        if self.formats.is_empty() {
            return Err(invalid("format", "no output format"));
        }
        if self.lift_samples == 0 || self.reps_per_class == 0 {
            return Err(invalid("lift_samples", "sample counts must be positive"));
        }
        Ok(())
    }

    /// Echo of the configuration for the report. Host-specific paths and
    /// worker counts are left out so reports compare across machines.
    pub fn echo(&self) -> BTreeMap<String, serde_json::Value> {
        let serde_json::Value::Object(map) = serde_json::to_value(self).expect("config serialises") else {
            unreachable!("a struct serialises to an object")
        };
        map.into_iter().filter(|(k, _)| !matches!(k.as_str(), "jobs" | "out" | "cache_dir")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_lists() {
        assert_eq!(parse_q_list("q", "3,5,7").unwrap(), vec![3, 5, 7]);
        assert_eq!(parse_q_list("q", "3-13").unwrap(), vec![3, 5, 7, 9, 11, 13]);
        assert!(parse_q_list("q", "4").is_err());
        assert!(parse_q_list("q", "8").is_err());
    }

    #[test]
    fn file_then_keys() {
        let mut c = Config::default();
        c.apply_text("[run]\nq = 3, 5  # small\nkind = 2\neta-branch = both\n").unwrap();
        assert_eq!(c.q, vec![3, 5]);
        assert_eq!(c.kinds, vec![TorusKind::T2]);
        assert_eq!(c.eta_branches.len(), 2);
        let err = c.apply_text("kind = 3").unwrap_err();
        assert!(err.to_string().contains("`kind`"));
        assert!(matches!(c.apply_text("colour = red"), Err(ConfigError::UnknownKey(_))));
    }
}
