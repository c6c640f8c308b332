//! Library surface of the command-line harness.
//!
//! The binary in `main.rs` is a thin argument parser over these modules so
//! integration tests can drive the same code paths directly.

pub mod config;
pub mod manifest;
pub mod pipeline;
pub mod run_cmd;
pub mod sweep_cmd;
pub mod verify_cmd;

/// Errors mapped onto process exit codes: config problems exit 2, simulation
/// contract violations and I/O failures exit 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Contract(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Contract(m) => write!(f, "contract violation: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Contract(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
