//! Closed-form thresholds of Brieskorn singularities `x^a + y^b + z^c`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::WeightVector;
use crate::rational::Rational;

/// Exponents normalized as `2 <= a <= b <= c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrieskornTriple {
    a: u64,
    b: u64,
    c: u64,
}

impl BrieskornTriple {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if 2 <= a && a <= b && b <= c {
            Ok(BrieskornTriple { a, b, c })
        } else {
            Err(Error::BrieskornNormalization(a, b, c))
        }
    }

    /// Sorts arbitrary exponents. `perm[i]` is the input position of sorted
    /// coordinate `i`.
    pub fn sorted(exps: [u64; 3]) -> Result<(Self, [usize; 3])> {
        let mut perm = [0usize, 1, 2];
        perm.sort_by_key(|&i| exps[i]);
        let t = BrieskornTriple::new(exps[perm[0]], exps[perm[1]], exps[perm[2]])?;
        Ok((t, perm))
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn exponents(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for BrieskornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BrieskornCase {
    LcmRule,
    S1,
    S2,
    S3,
    #[serde(rename = "clamp-1")]
    Clamp1,
}

impl fmt::Display for BrieskornCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BrieskornCase::LcmRule => "lcm-rule",
            BrieskornCase::S1 => "s1",
            BrieskornCase::S2 => "s2",
            BrieskornCase::S3 => "s3",
            BrieskornCase::Clamp1 => "clamp-1",
        })
    }
}

/// The three candidate minima and the argmins of the first two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SValues {
    pub s1: Rational,
    pub s2: Rational,
    pub s3: Rational,
    pub k1: u64,
    pub k2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrieskornResult {
    pub value: Rational,
    pub case: BrieskornCase,
    /// Realizing weight; absent only when every candidate exceeds 1.
    pub weight: Option<WeightVector>,
    /// Present outside the lcm rule.
    pub s_values: Option<SValues>,
}

fn q(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

// min over 1 <= k <= kmax of 1/outer + ceil(k outer / inner) / (k outer), smallest k on ties
fn line_minimum(inner: u64, outer: u64, kmax: u64) -> (Rational, u64) {
    let mut best: Option<(Rational, u64)> = None;
    for k in 1..=kmax {
        let ko = k * outer;
        let v = q(1, outer) + q(ko.div_ceil(inner), ko);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, k));
        }
    }
    best.expect("kmax >= 1")
}

pub fn s_values(t: &BrieskornTriple) -> SValues {
    let (a, b, c) = (t.a, t.b, t.c);
    let (s1, k1) = line_minimum(a, b, c / b);
    let (s2, k2) = line_minimum(b, a, c / a);
    let s3 = q(c.div_ceil(a) + c.div_ceil(b), c);
    SValues { s1, s2, s3, k1, k2 }
}

pub fn ct_brieskorn3(t: &BrieskornTriple) -> BrieskornResult {
    let (a, b, c) = (t.a, t.b, t.c);
    let m = a.lcm(&b);
    if m <= c {
        return BrieskornResult {
            value: q(1, a) + q(1, b),
            case: BrieskornCase::LcmRule,
            weight: Some(WeightVector::new_unchecked(vec![m / a, m / b, 1])),
            s_values: None,
        };
    }
    let s = s_values(t);
    let (case, value, w) = if s.s2 <= s.s1 && s.s2 <= s.s3 {
        (BrieskornCase::S2, &s.s2, vec![s.k2, (s.k2 * a).div_ceil(b), 1])
    } else if s.s1 <= s.s3 {
        (BrieskornCase::S1, &s.s1, vec![(s.k1 * b).div_ceil(a), s.k1, 1])
    } else {
        (BrieskornCase::S3, &s.s3, vec![c.div_ceil(a), c.div_ceil(b), 1])
    };
    let one = Rational::one();
    let result = if *value < one {
        BrieskornResult {
            value: value.clone(),
            case,
            weight: Some(WeightVector::new_unchecked(w)),
            s_values: None,
        }
    } else {
        BrieskornResult {
            value: one.clone(),
            case: BrieskornCase::Clamp1,
            weight: (*value == one).then(|| WeightVector::new_unchecked(w)),
            s_values: None,
        }
    };
    BrieskornResult {
        s_values: Some(s),
        ..result
    }
}

/// Like [`ct_brieskorn3`] for exponents in any order; the weight is returned in
/// input coordinates.
pub fn ct_brieskorn_unsorted(exps: [u64; 3]) -> Result<BrieskornResult> {
    let (t, perm) = BrieskornTriple::sorted(exps)?;
    let mut r = ct_brieskorn3(&t);
    let mut inverse = [0usize; 3];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    r.weight = r.weight.map(|w| w.permuted(&inverse));
    Ok(r)
}

/// `min(1/a_1 + ... + 1/a_n, 1)`.
pub fn lct_brieskorn(exponents: &[u64]) -> Result<Rational> {
    if exponents.is_empty() {
        return Err(Error::EmptyExponents);
    }
    if exponents.contains(&0) {
        return Err(Error::ZeroExponent);
    }
    let sum: Rational = exponents.iter().map(|&e| q(1, e)).sum();
    Ok(sum.min(Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64, c: u64) -> BrieskornTriple {
        BrieskornTriple::new(a, b, c).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn wv(v: &[u64]) -> Option<WeightVector> {
        Some(WeightVector::new(v.to_vec()).unwrap())
    }

    #[test]
    fn s_value_examples() {
        let s = s_values(&t(3, 7, 11));
        assert_eq!((s.s1, s.s2.clone(), s.s3), (r(4, 7), r(1, 2), r(6, 11)));
        assert_eq!(s.k2, 2);

        let s = s_values(&t(5, 6, 29));
        assert_eq!((s.s1.clone(), s.s2, s.s3), (r(3, 8), r(2, 5), r(11, 29)));
        assert_eq!(s.k1, 4);

        let s = s_values(&t(12, 18, 35));
        assert_eq!((s.s1, s.s2, s.s3), (r(1, 6), r(1, 6), r(1, 7)));
    }

    #[test]
    fn closed_form_examples() {
        let res = ct_brieskorn3(&t(3, 7, 11));
        assert_eq!((res.value, res.case, res.weight), (r(1, 2), BrieskornCase::S2, wv(&[2, 1, 1])));

        let res = ct_brieskorn3(&t(5, 6, 29));
        assert_eq!((res.value, res.case, res.weight), (r(3, 8), BrieskornCase::S1, wv(&[5, 4, 1])));

        let res = ct_brieskorn3(&t(12, 18, 35));
        assert_eq!((res.value, res.case, res.weight), (r(1, 7), BrieskornCase::S3, wv(&[3, 2, 1])));

        let res = ct_brieskorn3(&t(2, 3, 6));
        assert_eq!((res.value, res.case, res.weight), (r(5, 6), BrieskornCase::LcmRule, wv(&[3, 2, 1])));
        assert!(res.s_values.is_none());

        let res = ct_brieskorn3(&t(2, 3, 5));
        assert_eq!((res.value, res.case), (r(1, 1), BrieskornCase::Clamp1));
        let s = res.s_values.unwrap();
        assert_eq!((s.s1, s.s2, s.s3), (r(1, 1), r(1, 1), r(1, 1)));

        let res = ct_brieskorn3(&t(2, 2, 2));
        assert_eq!((res.value, res.case), (r(1, 1), BrieskornCase::LcmRule));
    }

    #[test]
    fn normalization_and_sorting() {
        assert_eq!(BrieskornTriple::new(7, 3, 11), Err(Error::BrieskornNormalization(7, 3, 11)));
        assert!(BrieskornTriple::new(1, 3, 4).is_err());
        let res = ct_brieskorn_unsorted([11, 3, 7]).unwrap();
        assert_eq!(res.value, r(1, 2));
        assert_eq!(res.weight, wv(&[1, 2, 1]));
    }

    #[test]
    fn lct_examples() {
        assert_eq!(lct_brieskorn(&[2, 3, 6]).unwrap(), r(1, 1));
        assert_eq!(lct_brieskorn(&[3, 7, 11]).unwrap(), r(131, 231));
        assert_eq!(lct_brieskorn(&[2, 2]).unwrap(), r(1, 1));
        assert_eq!(lct_brieskorn(&[]), Err(Error::EmptyExponents));
    }

    #[test]
    fn lower_bound_and_lcm_endpoint() {
        for a in 2..=30 {
            for b in a..=30 {
                let floor = q(1, a) + q(1, b);
                for c in b..=30 {
                    let res = ct_brieskorn3(&t(a, b, c));
                    assert!(res.value >= floor.clone().min(Rational::one()), "({a},{b},{c})");
                    if c >= a.lcm(&b) {
                        assert_eq!(res.value, floor);
                    }
                    assert!(lct_brieskorn(&[a, b, c]).unwrap() >= res.value);
                    if let (Some(w), BrieskornCase::S1 | BrieskornCase::S2 | BrieskornCase::S3) = (&res.weight, res.case) {
                        assert_eq!(w.coords()[2], 1);
                    }
                }
            }
        }
    }
}
