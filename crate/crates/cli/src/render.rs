//! Plain-text and JSON rendering of results. JSON output uses a fixed field
//! order and reduced fractions, so parsing and re-rendering is byte-identical.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thresholdkit::{
    BrieskornCase, BrieskornResult, Certificate, Rational, SValues, ThresholdReport, WeightVector,
};

fn join<T: ToString>(items: &[T]) -> String {
    if items.is_empty() {
        return "none".to_string();
    }
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn report_text(r: &ThresholdReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ct: {}{}", r.value, if r.clamped { " (clamped)" } else { "" });
    let _ = writeln!(s, "witnesses: {}", join(&r.witnesses));
    let _ = writeln!(s, "relaxation: {}", r.relaxation);
    let _ = writeln!(s, "search bound: {}", r.search_bound);
    let _ = writeln!(s, "nodes: {}", r.nodes);
    let _ = writeln!(s, "status: {}", r.status);
    s
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types serialize")
}

/// Parses rendered JSON back and renders it again.
pub fn rerender<T: Serialize + for<'de> Deserialize<'de>>(json: &str) -> serde_json::Result<String> {
    let value: T = serde_json::from_str(json)?;
    Ok(to_json(&value))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctOutput {
    pub value: Rational,
    pub clamped: bool,
    pub relaxation: Rational,
}

impl LctOutput {
    pub fn new(relaxation: Rational) -> Self {
        let one = Rational::one();
        LctOutput {
            value: relaxation.clone().min(one.clone()),
            clamped: relaxation > one,
            relaxation,
        }
    }

    pub fn text(&self) -> String {
        format!(
            "lct: {}{}\nrelaxation: {}\n",
            self.value,
            if self.clamped { " (clamped)" } else { "" },
            self.relaxation
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrieskornOutput {
    pub exponents: [u64; 3],
    pub value: Rational,
    pub case: BrieskornCase,
    pub weight: Option<WeightVector>,
    pub s_values: Option<SValues>,
    pub lct: Rational,
    /// Set when the engine was run for comparison.
    pub verified: Option<bool>,
}

impl BrieskornOutput {
    pub fn new(exponents: [u64; 3], r: BrieskornResult, lct: Rational) -> Self {
        BrieskornOutput {
            exponents,
            value: r.value,
            case: r.case,
            weight: r.weight,
            s_values: r.s_values,
            lct,
            verified: None,
        }
    }

    pub fn text(&self) -> String {
        let [a, b, c] = self.exponents;
        let mut s = String::new();
        let _ = writeln!(s, "exponents: ({a},{b},{c})");
        let _ = writeln!(s, "ct: {}", self.value);
        let _ = writeln!(s, "case: {}", self.case);
        match &self.weight {
            Some(w) => {
                let _ = writeln!(s, "weight: {w}");
            }
            None => {
                let _ = writeln!(s, "weight: none");
            }
        }
        if let Some(sv) = &self.s_values {
            let _ = writeln!(s, "s1: {} (k1 = {})", sv.s1, sv.k1);
            let _ = writeln!(s, "s2: {} (k2 = {})", sv.s2, sv.k2);
            let _ = writeln!(s, "s3: {}", sv.s3);
        }
        let _ = writeln!(s, "lct: {}", self.lct);
        if let Some(v) = self.verified {
            let _ = writeln!(s, "engine: {}", if v { "agrees" } else { "MISMATCH" });
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOutput {
    pub threshold: Rational,
    pub holds: bool,
    pub witness: Option<WeightVector>,
    pub excess: Option<Rational>,
}

impl CertificateOutput {
    pub fn new(threshold: Rational, c: Certificate) -> Self {
        CertificateOutput {
            threshold,
            holds: c.holds,
            witness: c.witness,
            excess: c.excess,
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "ct = {}: {}\n",
            self.threshold,
            if self.holds { "certified" } else { "rejected" }
        );
        if let (Some(w), Some(e)) = (&self.witness, &self.excess) {
            let _ = writeln!(s, "witness: {w}");
            let _ = writeln!(s, "excess: {e}");
        }
        s
    }
}
