//! Command-line front end for `bruhat-core`.

pub mod cache;
pub mod codec;
pub mod commands;
pub mod error;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
