//! Library side of the sweep CLI: configuration, calibration, grid sweeps,
//! hysteresis mapping, and table emission. The `spinres` binary is a thin
//! argument-parsing layer over [`commands`].

pub mod bistability;
pub mod calibrate;
pub mod commands;
pub mod config;
pub mod emit;
pub mod peaks;
pub mod sweep;

use std::fmt;

/// CLI-level error split by exit code: model/validation failures exit 1,
/// I/O failures exit 2.
#[derive(Debug, Clone)]
pub enum CliError {
    Model(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    /// Short status-cell form.
    pub fn brief(&self) -> String {
        match self {
            CliError::Model(m) | CliError::Io(m) => {
                let first = m.split(':').next().unwrap_or(m).trim();
                if first.is_empty() {
                    "error".to_string()
                } else {
                    first.replace(',', ";")
                }
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Model(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<spinres::Error> for CliError {
    fn from(e: spinres::Error) -> Self {
        CliError::Model(e.to_string())
    }
}
