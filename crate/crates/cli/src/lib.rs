//! Command implementations behind the `finlang` binary.

pub mod commands;
pub mod report;

use finlang_core::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Usage(_) => EXIT_CONFIG,
            CliError::Write { .. } => EXIT_INVARIANT,
            CliError::Core(e) => match e {
                Error::Config { .. } | Error::NotAutomorphism(_) => EXIT_CONFIG,
                Error::UnsupportedType(_)
                | Error::BadPrime { .. }
                | Error::DisconnectedSpectral
                | Error::NotInOracleMenu(_) => EXIT_UNSUPPORTED,
                Error::OrderBound { .. }
                | Error::UnreducedPoint(_)
                | Error::UnknownCell { .. }
                | Error::CellMoved(_)
                | Error::Invariant(_) => EXIT_INVARIANT,
            },
        }
    }
}
