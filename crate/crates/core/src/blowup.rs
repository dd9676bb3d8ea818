//! Weighted blow-up bookkeeping: discrepancy and multiplicity of the
//! exceptional divisor, strict transforms in the affine charts.

use std::fmt;

use num_bigint::BigInt;

use crate::engine::{ct_diagram, h_value, HValue, SearchConfig};
use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, SupportSet, WeightVector};
use crate::newton::NewtonDiagram;
use crate::rational::Rational;

/// Discrepancy `a = |w|_1 - 1` and multiplicity `b = w(f)` of the exceptional
/// divisor of the `w`-blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupLedger {
    pub weight: WeightVector,
    pub discrepancy: u64,
    pub multiplicity: u128,
}

impl BlowupLedger {
    /// `a - c b`; zero exactly when the divisor computes the threshold `c`.
    pub fn excess(&self, c: &Rational) -> Rational {
        Rational::from(self.discrepancy) - c * &Rational::from_integer(BigInt::from(self.multiplicity))
    }
}

pub fn ledger(d: &NewtonDiagram, w: &WeightVector) -> Result<BlowupLedger> {
    Ok(BlowupLedger {
        weight: w.clone(),
        discrepancy: w.discrepancy(),
        multiplicity: d.weight_of(w)?,
    })
}

/// Strict transform of a support in chart `chart` (0-based):
/// coordinate `chart` becomes `<w, m> - w(f)`, the others are kept.
///
/// Works on the full support; callers reduce to a diagram only when needed,
/// since a reduced support can lose monomials a later chart depends on.
pub fn chart_transform(s: &SupportSet, w: &WeightVector, chart: usize) -> Result<SupportSet> {
    let n = s.dim();
    if w.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: w.dim(),
        });
    }
    if chart >= n {
        return Err(Error::ChartOutOfRange { index: chart, dim: n });
    }
    if w.coords()[chart] == 0 {
        return Err(Error::ZeroChartWeight(chart));
    }
    let wf = s
        .points()
        .iter()
        .map(|m| m.dot(w.coords()))
        .min()
        .expect("supports are nonempty");
    let mut out = Vec::with_capacity(s.len());
    for m in s.points() {
        let mut c = m.coords().to_vec();
        c[chart] = u64::try_from(m.dot(w.coords()) - wf).map_err(|_| Error::Overflow)?;
        out.push(ExponentVector::new(c));
    }
    SupportSet::new(n, out)
}

/// Cyclic quotient type of a chart: `C^n / Z_r(e_1, ..., e_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartLabel {
    pub order: u64,
    pub weights: Vec<u64>,
}

impl fmt::Display for ChartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "C^{}", self.weights.len());
        }
        let ws: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "C^{}/Z_{}({})", self.weights.len(), self.order, ws.join(","))
    }
}

/// Chart `i` of the `w`-blow-up is `C^n / Z_{w_i}` acting with weight 1 on
/// the exceptional coordinate and `-w_j mod w_i` elsewhere.
pub fn chart_label(w: &WeightVector, chart: usize) -> Result<ChartLabel> {
    let n = w.dim();
    if chart >= n {
        return Err(Error::ChartOutOfRange { index: chart, dim: n });
    }
    let r = w.coords()[chart];
    if r == 0 {
        return Err(Error::ZeroChartWeight(chart));
    }
    let weights = w
        .coords()
        .iter()
        .enumerate()
        .map(|(j, &wj)| {
            if j == chart {
                1 % r
            } else {
                (r - wj % r) % r
            }
        })
        .collect();
    Ok(ChartLabel { order: r, weights })
}

/// Whether `w` attains the threshold of `d`.
pub fn verify_weight_realizes(d: &NewtonDiagram, w: &WeightVector, cfg: &SearchConfig) -> Result<bool> {
    let report = ct_diagram(d, cfg)?;
    Ok(match h_value(d, w)? {
        HValue::Finite(h) => h == report.value,
        HValue::Infinite => false,
    })
}
