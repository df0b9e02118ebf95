use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes, one per failure class.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const INVARIANT: i32 = 4;
    pub const SOLVER: i32 = 5;
    pub const IO: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("unsupported schema_version {found} in {source_name} (supported: {supported})")]
    SchemaVersion {
        source_name: String,
        found: u64,
        supported: u64,
    },
    #[error("invalid {context}: {message}")]
    Invariant { context: String, message: String },
    #[error("solver: {0}")]
    Solver(beamalign::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("writing csv {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Parse { .. } | CliError::SchemaVersion { .. } => exit::PARSE,
            CliError::Invariant { .. } => exit::INVARIANT,
            CliError::Solver(_) => exit::SOLVER,
            CliError::Io { .. } | CliError::Csv { .. } => exit::IO,
        }
    }

    pub fn invariant(context: impl Into<String>, message: impl ToString) -> Self {
        CliError::Invariant {
            context: context.into(),
            message: message.to_string(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Sorts a library error into the solver or invariant class.
    pub fn from_core(context: impl Into<String>, err: beamalign::Error) -> Self {
        use beamalign::Error as E;
        match err {
            E::TooManyCells { .. }
            | E::GridTooCoarse { .. }
            | E::NotMonotone
            | E::Infeasible { .. }
            | E::TooManyCellsForBits { .. } => CliError::Solver(err),
            other => CliError::invariant(context, other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
