//! Command-line front-end for `thresholdkit`.

use std::path::Path;

use thiserror::Error;
use thresholdkit::{
    ct_bruteforce, ct_diagram, parse_polynomial, DiagramJson, NewtonDiagram, ParseError, SearchConfig,
    ThresholdReport, VariableSet,
};

mod app;
pub mod batch;
pub mod render;
pub mod sweep;

pub use app::{run, Cli, Command};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const UNIT_AT_ORIGIN: i32 = 2;
    pub const BOUND_EXCEEDED: i32 = 3;
    pub const MISMATCH: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] thresholdkit::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(thresholdkit::Error::UnitAtOrigin) => exit::UNIT_AT_ORIGIN,
            CliError::Core(thresholdkit::Error::BoundExceeded(_)) => exit::BOUND_EXCEEDED,
            _ => exit::USAGE,
        }
    }

    /// Short machine-readable tag used in batch error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Core(thresholdkit::Error::UnitAtOrigin) => "unit-at-origin",
            CliError::Core(thresholdkit::Error::BoundExceeded(_)) => "bound-exceeded",
            CliError::Core(thresholdkit::Error::InvalidDiagram(_)) => "invalid-diagram",
            CliError::Core(_) => "invalid-input",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Csv(_) => "csv",
            CliError::Json(_) => "json",
        }
    }
}

/// Settings shared by every command that computes a threshold.
#[derive(Debug, Clone, Default)]
pub struct ComputeOptions {
    pub search: SearchConfig,
    /// Use the exhaustive oracle with this coordinate cap instead of the engine.
    pub brute: Option<u64>,
    pub vars: Option<VariableSet>,
}

impl ComputeOptions {
    pub fn ct(&self, d: &NewtonDiagram) -> Result<ThresholdReport, CliError> {
        Ok(match self.brute {
            Some(cap) => ct_bruteforce(d, cap)?,
            None => ct_diagram(d, &self.search)?,
        })
    }
}

/// Reads a polynomial or an inline `{"n":..,"points":..}` diagram.
pub fn diagram_from_text(text: &str, vars: Option<&VariableSet>) -> Result<NewtonDiagram, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok(DiagramJson::parse(trimmed)?);
    }
    let vars = match vars {
        Some(v) => v.clone(),
        None => VariableSet::infer(trimmed)?,
    };
    let support = parse_polynomial(trimmed, &vars)?;
    Ok(NewtonDiagram::from_support(&support)?)
}

pub fn diagram_from_file(path: &Path, vars: Option<&VariableSet>) -> Result<NewtonDiagram, CliError> {
    diagram_from_text(&std::fs::read_to_string(path)?, vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_forms() {
        let a = diagram_from_text("x^3+y^7+z^11", None).unwrap();
        let b = diagram_from_text(r#"{"n":3,"points":[[3,0,0],[0,7,0],[0,0,11]]}"#, None).unwrap();
        assert_eq!(a, b);
        let vars = VariableSet::from_list("a,b").unwrap();
        assert_eq!(diagram_from_text("a^2 + b^3", Some(&vars)).unwrap().dim(), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(diagram_from_text("x^0", None).unwrap_err().exit_code(), exit::USAGE);
        let unit: CliError = thresholdkit::Error::UnitAtOrigin.into();
        assert_eq!(unit.exit_code(), exit::UNIT_AT_ORIGIN);
    }
}
