//! JSON-lines batch processing.
//!
//! Each nonblank input line is a JSON string holding a polynomial, a diagram
//! object `{"n":..,"points":..}`, or a bare polynomial. Each produces one
//! output line, in input order.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thresholdkit::{DiagramJson, NewtonDiagram, ThresholdReport};

use crate::{diagram_from_text, CliError, ComputeOptions};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchError {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchOutput {
    Result { line: usize, result: ThresholdReport },
    Error { line: usize, error: BatchError },
}

impl BatchOutput {
    pub fn is_error(&self) -> bool {
        matches!(self, BatchOutput::Error { .. })
    }
}

fn parse_line(line: &str, opts: &ComputeOptions) -> Result<NewtonDiagram, CliError> {
    match serde_json::from_str::<Value>(line) {
        Ok(Value::String(text)) => diagram_from_text(&text, opts.vars.as_ref()),
        Ok(obj @ Value::Object(_)) => {
            let dj: DiagramJson = serde_json::from_value(obj)
                .map_err(|e| thresholdkit::Error::InvalidDiagram(e.to_string()))?;
            Ok(dj.to_diagram()?)
        }
        _ => diagram_from_text(line, opts.vars.as_ref()),
    }
}

/// Processes every nonblank line; `line` fields are 1-based input line numbers.
pub fn run_batch(input: &str, opts: &ComputeOptions) -> Vec<BatchOutput> {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.trim()))
        .collect();
    lines
        .into_par_iter()
        .map(|(line, text)| {
            match parse_line(text, opts).and_then(|d| opts.ct(&d)) {
                Ok(result) => BatchOutput::Result { line, result },
                Err(e) => BatchOutput::Error {
                    line,
                    error: BatchError {
                        kind: e.kind().to_string(),
                        message: e.to_string(),
                    },
                },
            }
        })
        .collect()
}

pub fn write_outputs<W: Write>(outputs: &[BatchOutput], mut out: W) -> std::io::Result<()> {
    for o in outputs {
        serde_json::to_writer(&mut out, o)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Writes to a temporary file next to `path` and renames it into place.
pub fn write_outputs_atomic(outputs: &[BatchOutput], path: &Path) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_outputs(outputs, &mut tmp)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
