use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Format};
use crate::error::CliError;
use crate::experiments::run_mode;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub results: serde_json::Value,
    pub tool_version: String,
    /// Seconds; the only field that varies between identical runs.
    pub wall_clock: f64,
}

pub struct Run {
    pub report: ExperimentReport,
    pub table: Option<String>,
}

/// Runs the configured experiment on a pool of `cfg.workers` threads.
/// Results are collected in replica order, so they do not depend on the
/// pool size.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Run, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| CliError::Pool(e.to_string()))?;
    let start = Instant::now();
    let outcome = pool.install(|| run_mode(cfg))?;
    Ok(Run {
        report: ExperimentReport {
            config: cfg.clone(),
            results: outcome.results,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_clock: start.elapsed().as_secs_f64(),
        },
        table: outcome.table,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(io)?;
    file.write_all(contents.as_bytes()).map_err(io)
}

pub fn report_json(report: &ExperimentReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes to JSON");
    text.push('\n');
    text
}

/// Sidecar report path for CSV output: `run.csv` → `run.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    if out.extension().is_some_and(|e| e == "json") {
        let mut name = out.as_os_str().to_owned();
        name.push(".report.json");
        PathBuf::from(name)
    } else {
        out.with_extension("json")
    }
}

/// Writes the report. JSON goes to `out` (or stdout). CSV writes the table
/// to `out` and the JSON report beside it; without `out` the table goes to
/// stdout. Returns the files written.
pub fn emit_report(
    run: &Run,
    format: Format,
    out: Option<&Path>,
) -> Result<Vec<PathBuf>, CliError> {
    let json = report_json(&run.report);
    let stdout = |text: &str| {
        let mut lock = std::io::stdout().lock();
        lock.write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
    };
    match (format, out) {
        (Format::Json, Some(path)) => {
            write_file(path, &json)?;
            Ok(vec![path.to_path_buf()])
        }
        (Format::Json, None) => stdout(&json).map(|_| Vec::new()),
        (Format::Csv, out) => {
            let table = run.table.as_deref().ok_or_else(|| {
                CliError::Precondition(format!("no table for {}", run.report.config.mode))
            })?;
            match out {
                Some(path) => {
                    let sidecar = sidecar_path(path);
                    write_file(path, table)?;
                    write_file(&sidecar, &json)?;
                    Ok(vec![path.to_path_buf(), sidecar])
                }
                None => stdout(table).map(|_| Vec::new()),
            }
        }
    }
}
