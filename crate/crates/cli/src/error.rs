use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),

    #[error("{0}")]
    Core(#[from] torus_hardcore::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("worker pool: {0}")]
    Pool(String),
}

impl CliError {
    /// 2 for precondition failures, 3 for exceeded budgets, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use torus_hardcore::Error as E;
        match self {
            CliError::Precondition(_) | CliError::Json { .. } => 2,
            CliError::Core(
                E::TooLarge { .. } | E::EnumerationCap { .. } | E::BudgetExceeded(_),
            ) => 3,
            CliError::Core(E::InvariantViolation(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Io { .. } | CliError::Pool(_) => 1,
        }
    }
}
