//! Exact canonical and log-canonical thresholds of hypersurface singularities
//! computed from Newton diagrams.
//!
//! ```
//! use thresholdkit::{ct_diagram, parse_polynomial_auto, NewtonDiagram, Rational, SearchConfig};
//!
//! let support = parse_polynomial_auto("x^3 + y^7 + z^11").unwrap();
//! let diagram = NewtonDiagram::from_support(&support).unwrap();
//! let report = ct_diagram(&diagram, &SearchConfig::default()).unwrap();
//! assert_eq!(report.value, Rational::new(1, 2));
//! ```

pub mod blowup;
pub mod brieskorn;
pub mod engine;
pub mod error;
pub mod lattice;
pub mod lp;
pub mod newton;
pub mod poly;
pub mod rational;

pub use blowup::{chart_label, chart_transform, ledger, verify_weight_realizes, BlowupLedger, ChartLabel};
pub use brieskorn::{
    ct_brieskorn3, ct_brieskorn_unsorted, lct_brieskorn, s_values, BrieskornCase, BrieskornResult,
    BrieskornTriple, SValues,
};
pub use engine::{
    certify, ct_bruteforce, ct_diagram, h_value, lct_diagram, Certificate, HValue, SearchConfig,
    SearchStatus, ThresholdReport, DEFAULT_MAX_BOUND,
};
pub use error::{Error, Result};
pub use lattice::{primitive, ExponentVector, SupportSet, WeightVector, MAX_DIM};
pub use lp::{lp_feasible, maximin_lp, Constraint, LpOutcome, MaximinSolution, Relation};
pub use newton::{dickson_reduce, DiagramJson, NewtonDiagram};
pub use poly::{parse_polynomial, parse_polynomial_auto, print_support, ParseError, ParseErrorKind, VariableSet};
pub use rational::Rational;
