//! The record written at the end of every run.

use serde::Serialize;

use concave_core::stats::GoFReport;
use concave_core::Error;

use crate::config::ExperimentConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_TEST_FAILED: i32 = 4;
pub const EXIT_INVALID: i32 = 5;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } | Error::BoundExceeded { .. } | Error::NonConvergence(_) => {
            EXIT_RESOURCE
        }
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::EmptySample | Error::InvalidInput(_) | Error::Domain(_) => EXIT_INVALID,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: ExperimentConfig,
    pub reports: Vec<GoFReport>,
    /// Conjunction of the enabled reports.
    pub pass: bool,
    pub exit_status: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_clock_seconds: f64,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: ExperimentConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config,
            reports: Vec::new(),
            pass: true,
            exit_status: EXIT_OK,
            error: None,
            wall_clock_seconds: 0.0,
        }
    }

    /// Sets `pass` and the exit status from the reports.
    pub fn conclude(&mut self, warn_only: bool) {
        self.pass = self.reports.iter().all(|r| r.pass);
        self.exit_status = if self.pass || warn_only {
            EXIT_OK
        } else {
            EXIT_TEST_FAILED
        };
    }

    pub fn fail(&mut self, e: &Error) {
        self.pass = false;
        self.exit_status = exit_code(e);
        self.error = Some(e.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}
