//! Canonical thresholds of Newton diagrams by minimizing over weighted blow-ups.
//!
//! For an admissible weight `w` the blow-up ratio is
//! `h(w) = (w_1 + ... + w_n - 1) / w(f)`, and the threshold of the diagram is
//! `min(1, min_w h(w))`. The minimum ranges over infinitely many vectors; the
//! search is made finite by the maximin LP relaxation. With `t*` the LP value
//! and `r* = 1/t*`, every admissible `w` has `|w| / w(f) >= r*`, hence
//!
//! ```text
//! h(w) >= r* (1 - 1/|w|_1)
//! ```
//!
//! so once a candidate `best < r*` is known only `|w|_1 < L` can improve it,
//! where `L` is the least integer with `r* (1 - 1/L) >= best`. The primitive
//! vector on the LP-optimal ray gives such a candidate directly. When that ray
//! is a coordinate axis a second argument supplies the candidate, or proves
//! that the threshold equals `r*` (see [`Seed`]).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, WeightVector};
use crate::lp::{maximin_constraints, maximin_lp, maximize, Constraint, LpOutcome, Relation};
use crate::newton::NewtonDiagram;
use crate::rational::Rational;

/// Default hard cap on `|w|_1`.
pub const DEFAULT_MAX_BOUND: u64 = 1_000_000;

/// `h(w)`, with `+∞` when `w(f) = 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum HValue {
    Finite(Rational),
    Infinite,
}

impl HValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            HValue::Finite(r) => Some(r),
            HValue::Infinite => None,
        }
    }
}

impl fmt::Display for HValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HValue::Finite(r) => write!(f, "{r}"),
            HValue::Infinite => write!(f, "inf"),
        }
    }
}

pub fn h_value(d: &NewtonDiagram, w: &WeightVector) -> Result<HValue> {
    let wf = d.weight_of(w)?;
    if wf == 0 {
        return Ok(HValue::Infinite);
    }
    Ok(HValue::Finite(Rational::new(
        BigInt::from(w.discrepancy()),
        BigInt::from(wf),
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Complete,
    BoundExceeded,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Complete => "complete",
            SearchStatus::BoundExceeded => "bound-exceeded",
        })
    }
}

/// Result of a threshold computation.
///
/// `witnesses` are the admissible weights attaining the raw minimum, sorted
/// lexicographically. For [`ct_diagram`] with status `complete` this is every
/// minimizer, except when the minimum equals the relaxation `r*` along a
/// coordinate axis (infinitely many minimizers), where only those with
/// `|w|_1 = 2` are listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub value: Rational,
    pub clamped: bool,
    pub witnesses: Vec<WeightVector>,
    pub relaxation: Rational,
    pub search_bound: u64,
    pub nodes: u64,
    pub status: SearchStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Hard cap on `|w|_1`; the search stops with `bound-exceeded` beyond it.
    pub max_bound: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_bound: DEFAULT_MAX_BOUND,
        }
    }
}

// Nonnegative fraction num/den with den > 0, compared by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    num: u128,
    den: u128,
}

impl Frac {
    const ONE: Frac = Frac { num: 1, den: 1 };

    fn lt(self, o: Frac) -> bool {
        self.num * o.den < o.num * self.den
    }

    fn le(self, o: Frac) -> bool {
        self.num * o.den <= o.num * self.den
    }

    fn min(self, o: Frac) -> Frac {
        if o.lt(self) {
            o
        } else {
            self
        }
    }

    fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    fn from_rational(r: &Rational) -> Option<Frac> {
        Some(Frac {
            num: r.numer().to_u128()?,
            den: r.denom().to_u128()?,
        })
    }
}

fn check_diagram(d: &NewtonDiagram) -> Result<()> {
    if d.has_origin() {
        return Err(Error::UnitAtOrigin);
    }
    Ok(())
}

/// The maximin LP solution and `r* = 1/t*`.
struct Relaxation {
    t_star: Rational,
    direction: Vec<Rational>,
    r_star: Rational,
}

fn relaxation(d: &NewtonDiagram) -> Result<Relaxation> {
    let sol = maximin_lp(d.generators(), d.dim())?;
    debug_assert!(sol.value.is_positive());
    Ok(Relaxation {
        r_star: sol.value.recip(),
        t_star: sol.value,
        direction: sol.direction,
    })
}

/// Continuous relaxation `min(1, r*)` of the threshold.
pub fn lct_diagram(d: &NewtonDiagram) -> Result<Rational> {
    check_diagram(d)?;
    Ok(relaxation(d)?.r_star.min(Rational::one()))
}

/// Primitive integer vector on the ray of a nonnegative rational direction.
fn ray_vector(u: &[Rational]) -> Vec<u64> {
    let l = u.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = u
        .iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_u64().expect("ray coordinates fit in u64"))
        .collect()
}

fn nonzero_count(w: &[u64]) -> usize {
    w.iter().filter(|&&c| c != 0).count()
}

fn gcd_all(w: &[u64]) -> u64 {
    w.iter().fold(0u64, |g, &x| g.gcd(&x))
}

/// Starting point of the level search.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Seed {
    /// An admissible vector with `h < r*`.
    Vector(Vec<u64>),
    /// `r* > 1`: the clamp at 1 bounds the search on its own.
    None,
    /// The LP optimum is a unique coordinate axis `e_i` and no admissible
    /// vector has `h < r*`; the threshold is exactly `r*`.
    ExactAtRelaxation,
}

// Any optimal point of the maximin program gives a vector with h < r* as long
// as it is not a coordinate axis. If the simplex returned e_i, look for another
// point of the optimal face; failing that, decide the axis case directly.
fn seed(d: &NewtonDiagram, rel: &Relaxation) -> Result<Seed> {
    let w0 = ray_vector(&rel.direction);
    if nonzero_count(&w0) >= 2 {
        return Ok(Seed::Vector(w0));
    }
    if rel.r_star > Rational::one() {
        return Ok(Seed::None);
    }
    let n = d.dim();
    let axis = w0.iter().position(|&c| c != 0).expect("direction sums to 1");

    // Other optimal vertices: maximize u_j over {maximin constraints, t >= t*}.
    let mut cons = maximin_constraints(d.generators(), n);
    let mut t_row = vec![Rational::zero(); n + 1];
    t_row[n] = Rational::one();
    cons.push(Constraint::new(t_row, Relation::Ge, rel.t_star.clone()));
    for j in (0..n).filter(|&j| j != axis) {
        let mut obj = vec![Rational::zero(); n + 1];
        obj[j] = Rational::one();
        if let LpOutcome::Optimal { value, solution } = maximize(&obj, &cons)? {
            if value.is_positive() {
                let half = Rational::new(1, 2);
                let mid: Vec<Rational> = (0..n)
                    .map(|k| (&rel.direction[k] + &solution[k]) * &half)
                    .collect();
                return Ok(Seed::Vector(ray_vector(&mid)));
            }
        }
    }

    // Unique optimum e_axis. Every generator has m_axis >= t*; let M0 be those
    // with equality. Writing w = k e_axis + v, h(w) < r* forces
    // <v, m0> > t* (|v| - 1) for every m0 in M0. Such v have |v| < t*/(t* - T)
    // with T the maximin value of M0 projected off the axis, and T < t* by
    // uniqueness. If one exists, a large enough k turns it into a seed.
    let t_star = rel
        .t_star
        .numer()
        .to_u128()
        .filter(|_| rel.t_star.is_integer())
        .expect("axis optimum is an integer exponent");
    let m0: Vec<ExponentVector> = d
        .generators()
        .iter()
        .filter(|m| m.coords()[axis] as u128 == t_star)
        .map(|m| {
            let mut c = m.coords().to_vec();
            c.remove(axis);
            ExponentVector::new(c)
        })
        .collect();
    let projected = maximin_lp(&m0, n - 1)?.value;
    let t_rat = Rational::from_integer(BigInt::from(t_star));
    assert!(projected < t_rat, "axis optimum must be unique here");
    let limit = (&t_rat / &(&t_rat - &projected)).ceil().to_u64().unwrap_or(u64::MAX);
    let mut v = vec![0u64; n - 1];
    for norm in 1..limit {
        let found = first_in_level(&mut v, 0, norm, &mut |v: &[u64]| {
            let rhs = t_star * (norm as u128 - 1);
            m0.iter().all(|m| m.dot(v) > rhs)
        });
        if found {
            let mut k = (t_star * (norm as u128 - 1) + 1) as u64;
            let g = gcd_all(&v);
            while k.gcd(&g) != 1 {
                k += 1;
            }
            let mut w = v.clone();
            w.insert(axis, k);
            return Ok(Seed::Vector(w));
        }
    }
    Ok(Seed::ExactAtRelaxation)
}

// Visits vectors with coordinate sum `remaining` over v[k..] in lexicographic
// order and stops at the first one accepted by `accept` (left in `v`).
fn first_in_level(v: &mut [u64], k: usize, remaining: u64, accept: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    if k + 1 == v.len() {
        v[k] = remaining;
        return accept(v);
    }
    for x in 0..=remaining {
        v[k] = x;
        if first_in_level(v, k + 1, remaining - x, accept) {
            return true;
        }
    }
    v[k] = 0;
    false
}

/// Smallest `L` with `r* (1 - 1/L) >= tau`, and whether equality holds there.
/// `None` when `r* <= tau`.
fn level_bound(r_star: &Rational, tau: Frac) -> Option<(u64, bool)> {
    let tau = tau.to_rational();
    if *r_star <= tau {
        return None;
    }
    let exact = r_star / &(r_star - &tau);
    let l = exact.ceil().to_u64()?;
    Some((l, exact.is_integer()))
}

struct LevelSearch<'a> {
    gens: Vec<&'a [u64]>,
    // suffix_max[g][k] = max_{j >= k} gens[g][j], with a trailing 0.
    suffix_max: Vec<Vec<u128>>,
    n: usize,
    best: Option<Frac>,
    witnesses: BTreeSet<Vec<u64>>,
    nodes: u64,
    r_star: Option<Frac>,
}

impl<'a> LevelSearch<'a> {
    fn new(d: &'a NewtonDiagram, r_star: &Rational) -> Self {
        let gens: Vec<&[u64]> = d.generators().iter().map(|g| g.coords()).collect();
        let n = d.dim();
        let suffix_max = gens
            .iter()
            .map(|g| {
                let mut s = vec![0u128; n + 1];
                for k in (0..n).rev() {
                    s[k] = s[k + 1].max(g[k] as u128);
                }
                s
            })
            .collect();
        LevelSearch {
            gens,
            suffix_max,
            n,
            best: None,
            witnesses: BTreeSet::new(),
            nodes: 0,
            r_star: Frac::from_rational(r_star),
        }
    }

    fn tau(&self) -> Frac {
        self.best.map_or(Frac::ONE, |b| b.min(Frac::ONE))
    }

    // Candidates need w(f) >= (s-1)/tau.
    fn need(&self, s: u64) -> u128 {
        let tau = self.tau();
        ((s as u128 - 1) * tau.den).div_ceil(tau.num)
    }

    fn offer(&mut self, w: &[u64], h: Frac) {
        match self.best {
            Some(b) if h.num * b.den == b.num * h.den => {
                if h.le(Frac::ONE) {
                    self.witnesses.insert(w.to_vec());
                }
            }
            Some(b) if !h.lt(b) => {}
            _ => {
                self.best = Some(h);
                self.witnesses.clear();
                if h.le(Frac::ONE) {
                    self.witnesses.insert(w.to_vec());
                }
            }
        }
    }

    fn level(&mut self, s: u64) {
        let g = self.gens.len();
        let mut w = vec![0u64; self.n];
        let mut partial = vec![0u128; g * (self.n + 1)];
        self.descend(s, 0, s, &mut w, &mut partial);
    }

    fn descend(&mut self, s: u64, k: usize, remaining: u64, w: &mut [u64], partial: &mut [u128]) {
        let g = self.gens.len();
        let n = self.n;
        let lo = if k + 1 == n { remaining } else { 0 };
        for x in lo..=remaining {
            w[k] = x;
            let need = self.need(s);
            let rest = (remaining - x) as u128;
            let mut feasible = true;
            for gi in 0..g {
                let p = partial[k * g + gi] + self.gens[gi][k] as u128 * x as u128;
                partial[(k + 1) * g + gi] = p;
                if p + rest * self.suffix_max[gi][k + 1] < need {
                    feasible = false;
                }
            }
            if !feasible {
                continue;
            }
            if k + 1 < n {
                self.descend(s, k + 1, remaining - x, w, partial);
            } else {
                self.leaf(s, w, &partial[n * g..(n + 1) * g]);
            }
        }
        w[k] = 0;
    }

    fn leaf(&mut self, s: u64, w: &[u64], dots: &[u128]) {
        if nonzero_count(w) < 2 || gcd_all(w) != 1 {
            return;
        }
        self.nodes += 1;
        let wf = *dots.iter().min().expect("nonempty");
        if wf == 0 {
            return;
        }
        if let Some(r) = self.r_star {
            // h(w) >= r* (1 - 1/|w|)  <=>  |w| >= r* w(f)
            debug_assert!(s as u128 * r.den >= r.num * wf, "relaxation bound violated at {w:?}");
        }
        self.offer(w, Frac { num: s as u128 - 1, den: wf });
    }
}

fn eval_raw(d: &NewtonDiagram, w: &[u64]) -> Option<Frac> {
    let wf = d.weight_of_raw(w);
    (wf > 0).then(|| Frac {
        num: w.iter().sum::<u64>() as u128 - 1,
        den: wf,
    })
}

fn finish(
    search: LevelSearch<'_>,
    rel: &Relaxation,
    search_bound: u64,
    status: SearchStatus,
) -> ThresholdReport {
    let raw = search.best.map(Frac::to_rational);
    let clamped = raw.as_ref().is_none_or(|r| *r > Rational::one());
    let value = match raw {
        Some(r) if !clamped => r,
        _ => Rational::one(),
    };
    let witnesses = if clamped {
        Vec::new()
    } else {
        search
            .witnesses
            .into_iter()
            .map(WeightVector::new_unchecked)
            .collect()
    };
    ThresholdReport {
        value,
        clamped,
        witnesses,
        relaxation: rel.r_star.clone(),
        search_bound,
        nodes: search.nodes,
        status,
    }
}

/// Canonical threshold of a diagram: `min(1, min_w h(w))` over admissible `w`.
pub fn ct_diagram(d: &NewtonDiagram, cfg: &SearchConfig) -> Result<ThresholdReport> {
    check_diagram(d)?;
    let rel = relaxation(d)?;
    let mut search = LevelSearch::new(d, &rel.r_star);

    let seed_vec = match seed(d, &rel)? {
        Seed::Vector(w) => Some(w),
        Seed::None => None,
        Seed::ExactAtRelaxation => {
            // Every admissible w has h(w) >= r*, and e_axis + e_j attains it.
            search.best = Frac::from_rational(&rel.r_star);
            assert!(search.best.is_some(), "relaxation too large for the level search");
            search.level(2);
            assert!(!search.witnesses.is_empty(), "axis case must have level-2 minimizers");
            return Ok(finish(search, &rel, 3, SearchStatus::Complete));
        }
    };
    if let Some(w) = &seed_vec {
        let h = eval_raw(d, w).expect("seed has positive weight");
        assert!(
            h.to_rational() < rel.r_star,
            "seed {w:?} does not beat the relaxation"
        );
        search.best = Some(h);
    }

    let mut s = 2u64;
    let (bound, status) = loop {
        let bound = level_bound(&rel.r_star, search.tau());
        if let Some((l, tie)) = bound {
            if s > l || (s == l && !tie) {
                break (l, SearchStatus::Complete);
            }
        }
        if s > cfg.max_bound {
            break (cfg.max_bound.saturating_add(1), SearchStatus::BoundExceeded);
        }
        search.level(s);
        s += 1;
    };

    if status == SearchStatus::BoundExceeded {
        // The seed may lie beyond the searched levels.
        if let (Some(w), Some(best)) = (&seed_vec, search.best) {
            if eval_raw(d, w) == Some(best) && best.le(Frac::ONE) {
                search.witnesses.insert(w.clone());
            }
        }
    }
    Ok(finish(search, &rel, bound, status))
}

/// Exhaustive oracle: every admissible `w` with all coordinates `<= cap`.
pub fn ct_bruteforce(d: &NewtonDiagram, cap: u64) -> Result<ThresholdReport> {
    check_diagram(d)?;
    let rel = relaxation(d)?;
    let n = d.dim();
    let mut best: Option<Frac> = None;
    let mut witnesses: Vec<Vec<u64>> = Vec::new();
    let mut nodes = 0u64;
    let mut w = vec![0u64; n];
    // Odometer over [0, cap]^n in lexicographic order, so witnesses stay sorted.
    'outer: loop {
        let mut k = n;
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            if w[k] < cap {
                w[k] += 1;
                break;
            }
            w[k] = 0;
        }
        if nonzero_count(&w) < 2 || gcd_all(&w) != 1 {
            continue;
        }
        nodes += 1;
        let Some(h) = eval_raw(d, &w) else {
            continue;
        };
        match best {
            Some(b) if b.lt(h) => {}
            Some(b) if !h.lt(b) => witnesses.push(w.clone()),
            _ => {
                best = Some(h);
                witnesses.clear();
                witnesses.push(w.clone());
            }
        }
    }
    let clamped = best.is_none_or(|b| Frac::ONE.lt(b));
    Ok(ThresholdReport {
        value: match best {
            Some(b) if !clamped => b.to_rational(),
            _ => Rational::one(),
        },
        clamped,
        witnesses: if clamped {
            Vec::new()
        } else {
            witnesses.into_iter().map(WeightVector::new_unchecked).collect()
        },
        relaxation: rel.r_star,
        search_bound: cap,
        nodes,
        status: SearchStatus::Complete,
    })
}

/// Outcome of [`certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub holds: bool,
    /// The equality witness when `holds`; otherwise a minimizing weight if any
    /// minimizer reaches the clamp (its excess is negative when `c` is too big).
    pub witness: Option<WeightVector>,
    /// `(|w|_1 - 1) - c w(f)` at `witness`.
    pub excess: Option<Rational>,
    /// Every minimizer found by the search.
    pub minimizers: Vec<WeightVector>,
}

/// Checks that `c` is the threshold: `(|w|_1 - 1) - c w(f) >= 0` for every
/// admissible `w`, with equality for at least one.
pub fn certify(d: &NewtonDiagram, c: &Rational, cfg: &SearchConfig) -> Result<Certificate> {
    if !c.is_positive() || *c > Rational::one() {
        return Err(Error::ThresholdOutOfRange(c.to_string()));
    }
    let report = ct_diagram(d, cfg)?;
    if report.status == SearchStatus::BoundExceeded {
        return Err(Error::BoundExceeded(report.search_bound));
    }
    let witness = report.witnesses.first().cloned();
    let excess = witness.as_ref().map(|w| {
        let b = d.weight_of(w).expect("dimension checked");
        Rational::from(w.discrepancy()) - c * &Rational::from_integer(BigInt::from(b))
    });
    let holds = report.value == *c && !report.clamped && witness.is_some();
    Ok(Certificate {
        holds,
        witness,
        excess,
        minimizers: report.witnesses,
    })
}
