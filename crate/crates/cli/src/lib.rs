//! Drivers behind the `minterp` binary: file formats, reports and the
//! acceptance runner.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod verify;

pub use config::{RunConfig, Tolerances};
pub use error::{CliError, EXIT_ACCEPTANCE, EXIT_INPUT, EXIT_NUMERIC, EXIT_OK};
pub use report::Report;
