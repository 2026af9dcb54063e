//! Command line companion to `henon-core`: file formats, verification
//! pipelines, and the escape-time / Green level-set renderer.

pub mod commands;
pub mod formats;
pub mod render;

pub use commands::run;

/// CLI-level error split matching the exit codes: usage problems (bad
/// arguments, unreadable or malformed files) exit 2, domain errors from
/// the computation kernel exit 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<henon_core::Error> for CliError {
    fn from(e: henon_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("malformed JSON: {e}"))
    }
}
