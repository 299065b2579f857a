use std::fmt;
use std::path::Path;

use eiwe_core::thermo::{occupation, WorkMethod};
use serde::{Deserialize, Serialize};

/// Largest number of points a single `start:stop:count` range may expand to.
pub const MAX_RANGE_POINTS: usize = 10_000;
/// Oracle runs are only accepted inside this box.
pub const ORACLE_MAX_N_BAR: f64 = 0.5;
pub const ORACLE_MAX_R: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(String),
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

mod method_names {
    use eiwe_core::thermo::WorkMethod;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(methods: &[WorkMethod], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(methods.iter().map(|m| m.as_str()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<WorkMethod>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names.iter().map(|n| n.parse().map_err(D::Error::custom)).collect()
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(methods: &Option<Vec<WorkMethod>>, s: S) -> Result<S::Ok, S::Error> {
            match methods {
                Some(m) => super::serialize(m, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<WorkMethod>>, D::Error> {
            super::deserialize(d).map(Some)
        }
    }
}

/// A fully resolved sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub beta_values: Vec<f64>,
    pub r_values: Vec<f64>,
    pub lambda_values: Vec<f64>,
    #[serde(with = "method_names")]
    pub methods: Vec<WorkMethod>,
    /// `None` writes to standard output.
    pub output_path: Option<String>,
    pub format: OutputFormat,
}

/// Config as read from a file or flags; every field optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "method_names::opt")]
    pub methods: Option<Vec<WorkMethod>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

impl PartialConfig {
    pub fn from_json_str(s: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(s).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// Fields set in `over` win.
    pub fn overlay(self, over: PartialConfig) -> PartialConfig {
        PartialConfig {
            beta_values: over.beta_values.or(self.beta_values),
            r_values: over.r_values.or(self.r_values),
            lambda_values: over.lambda_values.or(self.lambda_values),
            methods: over.methods.or(self.methods),
            output_path: over.output_path.or(self.output_path),
            format: over.format.or(self.format),
        }
    }

    /// Fills defaults (`lambda = [1]`, `methods = [exact]`, CSV) and validates.
    pub fn resolve(self) -> Result<SweepConfig, ConfigError> {
        let cfg = SweepConfig {
            beta_values: self.beta_values.ok_or_else(|| bad("beta values are required"))?,
            r_values: self.r_values.ok_or_else(|| bad("r values are required"))?,
            lambda_values: self.lambda_values.unwrap_or_else(|| vec![1.0]),
            methods: self.methods.unwrap_or_else(|| vec![WorkMethod::Exact]),
            output_path: self.output_path,
            format: self.format.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl SweepConfig {
    pub fn from_json_str(s: &str) -> Result<Self, ConfigError> {
        PartialConfig::from_json_str(s)?.resolve()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.beta_values.is_empty() || self.r_values.is_empty() || self.lambda_values.is_empty() {
            return Err(bad("value lists must be non-empty"));
        }
        if self.methods.is_empty() {
            return Err(bad("at least one method is required"));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(bad(format!("method `{m}` listed twice")));
            }
        }
        for &b in &self.beta_values {
            occupation(b).map_err(|e| bad(format!("beta {b}: {e}")))?;
        }
        for &r in &self.r_values {
            if !(r.is_finite() && r >= 0.0) {
                return Err(bad(format!("r {r} must be finite and non-negative")));
            }
        }
        for &l in &self.lambda_values {
            if !(l.is_finite() && l > 0.0) {
                return Err(bad(format!("lambda {l} must be finite and positive")));
            }
        }
        let general_dyne = self.lambda_values.iter().any(|&l| l != 1.0);
        if general_dyne {
            if let Some(m) = self.methods.iter().find(|&&m| m != WorkMethod::Exact) {
                return Err(bad(format!(
                    "lambda != 1 is only supported by the exact method, not `{m}`"
                )));
            }
        }
        if self.methods.contains(&WorkMethod::Oracle) {
            for &b in &self.beta_values {
                let n = occupation(b).map_err(|e| bad(e.to_string()))?;
                if n > ORACLE_MAX_N_BAR {
                    return Err(bad(format!(
                        "oracle needs n_bar <= {ORACLE_MAX_N_BAR}; beta {b} gives n_bar {n}"
                    )));
                }
            }
            if let Some(&r) = self.r_values.iter().find(|&&r| r > ORACLE_MAX_R) {
                return Err(bad(format!("oracle needs r <= {ORACLE_MAX_R}, got {r}")));
            }
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.beta_values.len() * self.r_values.len() * self.lambda_values.len() * self.methods.len()
    }
}

fn parse_number(tok: &str) -> Result<f64, ConfigError> {
    let v: f64 = tok.parse().map_err(|_| bad(format!("`{tok}` is not a number")))?;
    if !v.is_finite() {
        return Err(bad(format!("`{tok}` is not finite")));
    }
    Ok(v)
}

/// Comma-separated numbers; an item `start:stop:count` expands to `count`
/// evenly spaced points including both ends.
pub fn parse_value_list(s: &str) -> Result<Vec<f64>, ConfigError> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(bad("empty entry in value list"));
        }
        let parts: Vec<&str> = item.split(':').map(str::trim).collect();
        match parts.as_slice() {
            [v] => out.push(parse_number(v)?),
            [start, stop, count] => {
                let (a, b) = (parse_number(start)?, parse_number(stop)?);
                let n: usize = count
                    .parse()
                    .map_err(|_| bad(format!("`{count}` is not a point count")))?;
                if !(2..=MAX_RANGE_POINTS).contains(&n) {
                    return Err(bad(format!("range needs between 2 and {MAX_RANGE_POINTS} points")));
                }
                for i in 0..n {
                    let t = i as f64 / (n - 1) as f64;
                    out.push(if i == n - 1 { b } else { a * (1.0 - t) + b * t });
                }
            }
            _ => return Err(bad(format!("`{item}` is neither a number nor start:stop:count"))),
        }
        if out.len() > MAX_RANGE_POINTS {
            return Err(bad(format!("value list longer than {MAX_RANGE_POINTS}")));
        }
    }
    Ok(out)
}

/// Comma-separated method names.
pub fn parse_methods(s: &str) -> Result<Vec<WorkMethod>, ConfigError> {
    s.split(',')
        .map(|tok| tok.trim().parse::<WorkMethod>().map_err(bad))
        .collect()
}
