//! File format, JSON literals and command implementations behind the `hsig`
//! binary.

pub mod commands;
pub mod error;
pub mod export;
pub mod file;
pub mod literal;
pub mod report;

pub use error::{CliError, ExitStatus};
