//! The `mfcat` command line: JSON formats, the example corpus and the acceptance checks.

pub mod checks;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod json;

pub use error::CliError;
