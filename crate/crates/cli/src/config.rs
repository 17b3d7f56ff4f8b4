use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use torus_hardcore::{ExactParam, Rho, TorusGraph};

use crate::error::CliError;

/// Keys accepted in a config file; each mirrors a `--flag`.
pub const KEYS: &[&str] = &[
    "L",
    "d",
    "lambda",
    "rho",
    "seed",
    "steps",
    "replicas",
    "record-every",
    "burn-in",
    "samples",
    "input",
    "out",
    "format",
    "workers",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sample,
    Mixing,
    Escape,
    Cutsets,
    Peierls,
    Isoperimetry,
    Flowcheck,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Mode::Exact => "exact",
            Mode::Sample => "sample",
            Mode::Mixing => "mixing",
            Mode::Escape => "escape",
            Mode::Cutsets => "cutsets",
            Mode::Peierls => "peierls",
            Mode::Isoperimetry => "isoperimetry",
            Mode::Flowcheck => "flowcheck",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Precondition(format!(
                "unknown format {s:?}, expected json or csv"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub mode: Mode,
    #[serde(rename = "L")]
    pub side: usize,
    pub d: usize,
    pub lambda: ExactParam,
    pub rho: Rho,
    pub seed: u64,
    pub steps: u64,
    pub replicas: u64,
    pub record_every: u64,
    /// `None` means the default `⌈10 N ln N⌉`.
    pub burn_in: Option<u64>,
    pub samples: usize,
    pub input: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub workers: Option<usize>,
}

/// Reads `key = value` lines. Blank lines and `#` comments are skipped;
/// `_` in keys is read as `-`.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Precondition(format!("config line {}: expected key=value", i + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Precondition(format!(
                "config line {}: unknown key {key:?}",
                i + 1
            )));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
}

fn parse_field<T: FromStr>(
    settings: &BTreeMap<String, String>,
    key: &str,
    default: T,
) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    match settings.get(key) {
        None => Ok(default),
        Some(v) => v
            .parse()
            .map_err(|e| CliError::Precondition(format!("invalid value {v:?} for {key}: {e}"))),
    }
}

fn parse_optional<T: FromStr>(
    settings: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: fmt::Display,
{
    settings
        .get(key)
        .map(|v| {
            v.parse()
                .map_err(|e| CliError::Precondition(format!("invalid value {v:?} for {key}: {e}")))
        })
        .transpose()
}

impl ExperimentConfig {
    /// Builds a config from merged settings, checking the parameters the
    /// mode needs.
    pub fn from_settings(
        mode: Mode,
        settings: &BTreeMap<String, String>,
    ) -> Result<Self, CliError> {
        let cfg = ExperimentConfig {
            mode,
            side: parse_field(settings, "L", 4)?,
            d: parse_field(settings, "d", 2)?,
            lambda: parse_field(settings, "lambda", ExactParam::from_integer(1))?,
            rho: parse_field(settings, "rho", Rho::zero())?,
            seed: parse_field(settings, "seed", 0)?,
            steps: parse_field(settings, "steps", 100_000)?,
            replicas: parse_field(settings, "replicas", 8)?,
            record_every: parse_field(settings, "record-every", 1)?,
            burn_in: parse_optional(settings, "burn-in")?,
            samples: parse_field(settings, "samples", 1000)?,
            input: parse_optional(settings, "input")?,
            output_path: parse_optional(settings, "out")?,
            format: parse_field(settings, "format", Format::Json)?,
            workers: parse_optional(settings, "workers")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !self.lambda.is_positive() {
            return Err(CliError::Precondition("lambda must be positive".into()));
        }
        if self.side < 2 || self.side % 2 == 1 {
            return Err(CliError::Precondition(format!(
                "L = {} must be even and at least 2",
                self.side
            )));
        }
        if self.record_every == 0 {
            return Err(CliError::Precondition(
                "record-every must be positive".into(),
            ));
        }
        if self.workers == Some(0) {
            return Err(CliError::Precondition("workers must be positive".into()));
        }
        let stochastic = matches!(self.mode, Mode::Sample | Mode::Escape | Mode::Flowcheck);
        if stochastic && self.replicas == 0 {
            return Err(CliError::Precondition("replicas must be positive".into()));
        }
        if self.mode == Mode::Cutsets && self.input.is_none() {
            return Err(CliError::Precondition(
                "cutsets needs --input with an occupancy record".into(),
            ));
        }
        if self.format == Format::Csv && !matches!(self.mode, Mode::Sample | Mode::Escape) {
            return Err(CliError::Precondition(format!(
                "csv output is not available for {}",
                self.mode
            )));
        }
        Ok(())
    }

    pub fn torus(&self) -> Result<TorusGraph, CliError> {
        Ok(TorusGraph::new(self.side, self.d)?)
    }

    pub fn lambda_f64(&self) -> f64 {
        self.lambda.to_f64()
    }

    pub fn burn_in_for(&self, n: usize) -> u64 {
        self.burn_in
            .unwrap_or_else(|| torus_hardcore::glauber::default_burn_in(n))
    }
}
