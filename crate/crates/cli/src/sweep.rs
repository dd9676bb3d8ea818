//! Sweep over all Brieskorn triples `2 <= a <= b <= c <= max`, cross-checking
//! the closed form against the engine and recording the values near 1.

use std::collections::BTreeSet;
use std::io::Write;

use rayon::prelude::*;
use thresholdkit::{
    ct_brieskorn3, ct_diagram, lct_brieskorn, BrieskornCase, BrieskornTriple, NewtonDiagram, Rational,
    SearchConfig, SearchStatus, WeightVector,
};

use crate::CliError;

pub const CSV_HEADER: [&str; 12] = [
    "a", "b", "c", "ct_num", "ct_den", "case", "w1", "w2", "w3", "lct_num", "lct_den", "agrees",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub triple: BrieskornTriple,
    pub ct: Rational,
    pub case: BrieskornCase,
    pub weight: Option<WeightVector>,
    pub lct: Rational,
    pub engine_agrees: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub records: usize,
    pub mismatches: Vec<BrieskornTriple>,
    /// Values in `[4/5, 1]` outside `{4/5, 5/6, 1}`.
    pub gap_violations: Vec<(BrieskornTriple, Rational)>,
    pub lct_violations: Vec<BrieskornTriple>,
    /// Distinct values observed in `[4/5, 1]`.
    pub high_values: BTreeSet<Rational>,
}

impl SweepSummary {
    pub fn violations(&self) -> usize {
        self.mismatches.len() + self.gap_violations.len() + self.lct_violations.len()
    }

    pub fn four_fifths_observed(&self) -> bool {
        self.high_values.contains(&Rational::new(4, 5))
    }

    pub fn line(&self, max: u64) -> String {
        let values: Vec<String> = self.high_values.iter().map(Rational::to_string).collect();
        format!(
            "sweep {max}: {} triples, {} violations ({} engine mismatches, {} gap, {} lct); values in [4/5,1]: {{{}}}; 4/5 observed: {}",
            self.records,
            self.violations(),
            self.mismatches.len(),
            self.gap_violations.len(),
            self.lct_violations.len(),
            values.join(", "),
            if self.four_fifths_observed() { "yes" } else { "no" },
        )
    }
}

pub fn triples(max: u64) -> Vec<BrieskornTriple> {
    let mut out = Vec::new();
    for a in 2..=max {
        for b in a..=max {
            for c in b..=max {
                out.push(BrieskornTriple::new(a, b, c).expect("normalized"));
            }
        }
    }
    out
}

fn record(t: BrieskornTriple, cfg: &SearchConfig) -> Result<SweepRecord, CliError> {
    let closed = ct_brieskorn3(&t);
    let [a, b, c] = t.exponents();
    let d = NewtonDiagram::from_points(3, &[vec![a, 0, 0], vec![0, b, 0], vec![0, 0, c]])?;
    let report = ct_diagram(&d, cfg)?;
    let engine_agrees = report.status == SearchStatus::Complete && report.value == closed.value;
    Ok(SweepRecord {
        triple: t,
        ct: closed.value,
        case: closed.case,
        weight: closed.weight,
        lct: lct_brieskorn(&t.exponents())?,
        engine_agrees,
    })
}

/// Computes every record (in parallel on the current rayon pool, output in
/// triple order) and the summary of checks.
pub fn run_sweep(max: u64, cfg: &SearchConfig) -> Result<(Vec<SweepRecord>, SweepSummary), CliError> {
    if max < 2 {
        return Err(CliError::Usage(format!("sweep bound must be at least 2, got {max}")));
    }
    let records = triples(max)
        .into_par_iter()
        .map(|t| record(t, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let low = Rational::new(4, 5);
    let allowed = [Rational::new(4, 5), Rational::new(5, 6), Rational::one()];
    let mut summary = SweepSummary {
        records: records.len(),
        ..SweepSummary::default()
    };
    for r in &records {
        if !r.engine_agrees {
            summary.mismatches.push(r.triple);
        }
        if r.lct < r.ct {
            summary.lct_violations.push(r.triple);
        }
        if r.ct >= low {
            summary.high_values.insert(r.ct.clone());
            if !allowed.contains(&r.ct) {
                summary.gap_violations.push((r.triple, r.ct.clone()));
            }
        }
    }
    Ok((records, summary))
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let [a, b, c] = r.triple.exponents();
        let weight: Vec<String> = match &r.weight {
            Some(wv) => wv.coords().iter().map(u64::to_string).collect(),
            None => vec![String::new(); 3],
        };
        w.write_record([
            a.to_string(),
            b.to_string(),
            c.to_string(),
            r.ct.numer().to_string(),
            r.ct.denom().to_string(),
            r.case.to_string(),
            weight[0].clone(),
            weight[1].clone(),
            weight[2].clone(),
            r.lct.numer().to_string(),
            r.lct.denom().to_string(),
            r.engine_agrees.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps() {
        let (records, summary) = run_sweep(2, &SearchConfig::default()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].ct, Rational::one());
        assert_eq!(summary.violations(), 0);

        let (records, summary) = run_sweep(6, &SearchConfig::default()).unwrap();
        let r = records
            .iter()
            .find(|r| r.triple.exponents() == [2, 3, 6])
            .unwrap();
        assert_eq!(r.ct, Rational::new(5, 6));
        assert_eq!(summary.violations(), 0);
    }

    #[test]
    fn csv_layout() {
        let (records, _) = run_sweep(2, &SearchConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "a,b,c,ct_num,ct_den,case,w1,w2,w3,lct_num,lct_den,agrees\n2,2,2,1,1,lcm-rule,1,1,1,1,1,true\n"
        );
    }

    #[test]
    fn rejects_tiny_bound() {
        assert!(run_sweep(1, &SearchConfig::default()).is_err());
    }
}
