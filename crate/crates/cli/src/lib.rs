//! Experiment runners and report plumbing behind the `torus-hardcore`
//! binary.

pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

pub use config::{ExperimentConfig, Format, Mode};
pub use error::CliError;
pub use report::{emit_report, run_experiment, ExperimentReport, Run};
