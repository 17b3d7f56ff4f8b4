use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torus_hardcore_cli::config::read_config_file;
use torus_hardcore_cli::{emit_report, run_experiment, CliError, ExperimentConfig, Mode};

/// Hard-core model experiments on the even discrete torus.
#[derive(Parser)]
#[command(name = "torus-hardcore", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Exact class masses, partition function, mixing time and conductance bounds.
    Exact,
    /// Glauber class frequencies across replicas.
    Sample,
    /// Exact mixing time against the balanced-bottleneck bound.
    Mixing,
    /// Hitting time of OddHeavy from the all-even state.
    Escape,
    /// Contour family of a recorded state (--input).
    Cutsets,
    /// Shift, direction and flow diagnostics for a sampled even state.
    Peierls,
    /// Torus isoperimetric bound on random subsets.
    Isoperimetry,
    /// Exact flow identity over sampled contours.
    Flowcheck,
}

/// Every flag mirrors a config-file key and overrides it.
#[derive(Args)]
struct Flags {
    /// Config file of key=value lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Side length (even).
    #[arg(long = "L", global = true)]
    side: Option<String>,
    /// Dimension.
    #[arg(long, global = true)]
    d: Option<String>,
    /// Activity, as p/q or a decimal.
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Balance threshold in [0, 1].
    #[arg(long, global = true)]
    rho: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    #[arg(long, global = true)]
    steps: Option<String>,
    #[arg(long, global = true)]
    replicas: Option<String>,
    #[arg(long = "record-every", global = true)]
    record_every: Option<String>,
    /// Defaults to ceil(10 N ln N).
    #[arg(long = "burn-in", global = true)]
    burn_in: Option<String>,
    /// Random subsets for isoperimetry.
    #[arg(long, global = true)]
    samples: Option<String>,
    /// Occupancy record JSON for cutsets.
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true)]
    out: Option<String>,
    /// json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    workers: Option<String>,
}

impl Flags {
    fn merged(&self) -> Result<BTreeMap<String, String>, CliError> {
        let mut settings = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let flags = [
            ("L", &self.side),
            ("d", &self.d),
            ("lambda", &self.lambda),
            ("rho", &self.rho),
            ("seed", &self.seed),
            ("steps", &self.steps),
            ("replicas", &self.replicas),
            ("record-every", &self.record_every),
            ("burn-in", &self.burn_in),
            ("samples", &self.samples),
            ("input", &self.input),
            ("out", &self.out),
            ("format", &self.format),
            ("workers", &self.workers),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                settings.insert(key.to_string(), v.clone());
            }
        }
        Ok(settings)
    }
}

fn mode_of(command: Command) -> Mode {
    match command {
        Command::Exact => Mode::Exact,
        Command::Sample => Mode::Sample,
        Command::Mixing => Mode::Mixing,
        Command::Escape => Mode::Escape,
        Command::Cutsets => Mode::Cutsets,
        Command::Peierls => Mode::Peierls,
        Command::Isoperimetry => Mode::Isoperimetry,
        Command::Flowcheck => Mode::Flowcheck,
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = ExperimentConfig::from_settings(mode_of(cli.command), &cli.flags.merged()?)?;
    let run = run_experiment(&cfg)?;
    emit_report(&run, cfg.format, cfg.output_path.as_deref())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
