use std::io;
use std::path::PathBuf;

use thiserror::Error;

use rydhubo_core::{CompileError, ExpandError, HuboError, SimError, SolverError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error(transparent)]
    Schedule(#[from] SimError),
}

/// Process exit status of the command-line tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    NotEquivalent = 1,
    Parse = 2,
    Compile = 3,
    Bound = 4,
    Simulation = 5,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Hubo { path: PathBuf, source: HuboError },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Expand(#[from] ExpandError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Usage(String),
}

fn hubo_status(e: &HuboError) -> ExitStatus {
    match e {
        HuboError::EnumerationBound { .. } => ExitStatus::Bound,
        _ => ExitStatus::Parse,
    }
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Hubo { source, .. } => hubo_status(source),
            CliError::Read { .. } | CliError::Format { .. } | CliError::Usage(_) => ExitStatus::Parse,
            CliError::Write { .. } => ExitStatus::Compile,
            CliError::Compile(e) => match e {
                CompileError::Hubo(h) => hubo_status(h),
                CompileError::Solver(_) => ExitStatus::Bound,
                _ => ExitStatus::Compile,
            },
            CliError::Expand(_) => ExitStatus::Compile,
            CliError::Solver(_) => ExitStatus::Bound,
            CliError::Sim(_) => ExitStatus::Simulation,
        }
    }
}
