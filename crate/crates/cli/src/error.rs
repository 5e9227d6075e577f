use std::path::PathBuf;

use minterp_core::Error as CoreError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ACCEPTANCE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Read { .. } | Self::Parse { .. } | Self::Input(_) => EXIT_INPUT,
            Self::Write { .. } => EXIT_NUMERIC,
            Self::Core(e) => match e {
                CoreError::InvalidInput(_)
                | CoreError::NonDistinctPoints(..)
                | CoreError::UnimodularValue(_)
                | CoreError::TooManyPoints(_)
                | CoreError::NoNormPreservingExtension
                | CoreError::DerivativeNotVanishingAtZero(_) => EXIT_INPUT,
                _ => EXIT_NUMERIC,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), EXIT_INPUT);
        assert_eq!(
            CliError::Core(CoreError::NoNormPreservingExtension).exit_code(),
            EXIT_INPUT
        );
        assert_eq!(
            CliError::Core(CoreError::Numeric("x".into())).exit_code(),
            EXIT_NUMERIC
        );
        assert_eq!(
            CliError::Core(CoreError::DegenerateNullspace(2)).exit_code(),
            EXIT_NUMERIC
        );
    }
}
