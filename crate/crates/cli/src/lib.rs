//! Library side of the `lssa` command-line tool: configuration, CSV I/O,
//! subcommand runners, and the embedded validation suite.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod validate;

pub use error::{CliError, CliResult};
