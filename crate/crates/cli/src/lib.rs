//! Command-line front end: JSON configs, experiment orchestration and
//! CSV/JSON emission.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod validate;

pub use error::{CliError, CliResult};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const NOT_IDENTIFIABLE: i32 = 2;
}
