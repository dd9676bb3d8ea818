//! Lattice points: monomial exponents, weight vectors and supports.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by diagrams and the parser.
pub const MAX_DIM: usize = 8;

pub(crate) fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// Exponent of a monomial, or a lattice point of a diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(coords: Vec<u64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `<w, m>`; wide enough that no admissible input overflows.
    pub fn dot(&self, w: &[u64]) -> u128 {
        self.0
            .iter()
            .zip(w)
            .map(|(&m, &x)| m as u128 * x as u128)
            .sum()
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        ExponentVector(v)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[u64]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

/// An admissible weight vector: primitive, nonzero and not a unit vector.
///
/// Coordinate `i` weighs variable `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    /// Validates `coords` as-is; fails on imprimitive input instead of reducing.
    pub fn new(coords: Vec<u64>) -> Result<Self> {
        let g = check_nonunit(&coords)?;
        if g != 1 {
            return Err(Error::NotPrimitive(g));
        }
        Ok(WeightVector(coords))
    }

    pub(crate) fn new_unchecked(coords: Vec<u64>) -> Self {
        debug_assert!(WeightVector::new(coords.clone()).is_ok());
        WeightVector(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|w|_1`
    pub fn norm1(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Discrepancy of the exceptional divisor, `w_1 + ... + w_n - 1`.
    pub fn discrepancy(&self) -> u64 {
        self.norm1() - 1
    }

    /// Applies a coordinate permutation: output coordinate `i` is input `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> WeightVector {
        WeightVector(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(deserializer)?;
        WeightVector::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

// Returns the gcd of the coordinates after rejecting 0 and multiples of e_i.
fn check_nonunit(v: &[u64]) -> Result<u64> {
    let nonzero: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    match nonzero.as_slice() {
        [] => Err(Error::ZeroVector),
        [i] => Err(Error::UnitMultiple(i + 1)),
        _ => Ok(v.iter().fold(0u64, |g, &x| g.gcd(&x))),
    }
}

/// Reduces `v` to the primitive vector on its ray.
///
/// The zero vector and positive multiples of a unit vector are rejected: they
/// are exactly the weights excluded from the threshold minimum.
pub fn primitive(v: &[u64]) -> Result<WeightVector> {
    let g = check_nonunit(v)?;
    Ok(WeightVector(v.iter().map(|x| x / g).collect()))
}

/// The set of exponents of monomials with nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupportSet {
    dim: usize,
    points: BTreeSet<ExponentVector>,
}

impl SupportSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            set.insert(p);
        }
        if set.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(SupportSet { dim, points: set })
    }

    /// Convenience constructor from raw coordinate lists.
    pub fn from_vecs(dim: usize, points: &[Vec<u64>]) -> Result<Self> {
        SupportSet::new(dim, points.iter().cloned().map(ExponentVector::new))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &BTreeSet<ExponentVector> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.points.contains(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[4, 2, 2]).unwrap().coords(), &[2, 1, 1]);
        assert_eq!(primitive(&[3, 2, 1]).unwrap().coords(), &[3, 2, 1]);
        assert_eq!(primitive(&[2, 0, 0]), Err(Error::UnitMultiple(1)));
        assert_eq!(primitive(&[0, 0, 0]), Err(Error::ZeroVector));
        assert_eq!(primitive(&[0, 7, 0]), Err(Error::UnitMultiple(2)));
    }

    #[test]
    fn weight_vector_rejects_imprimitive() {
        assert_eq!(WeightVector::new(vec![2, 2, 0]), Err(Error::NotPrimitive(2)));
        assert!(WeightVector::new(vec![1, 1, 0]).is_ok());
        assert!(serde_json::from_str::<WeightVector>("[1,0,0]").is_err());
    }

    #[test]
    fn support_dedups_and_checks_dimension() {
        let s = SupportSet::from_vecs(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(SupportSet::from_vecs(3, &[vec![1, 1]]).is_err());
        assert_eq!(SupportSet::from_vecs(3, &[]), Err(Error::EmptySupport));
    }

    proptest! {
        #[test]
        fn primitive_is_scale_invariant(v in proptest::collection::vec(0u64..40, 2..6), k in 1u64..20) {
            if let Ok(w) = primitive(&v) {
                let scaled: Vec<u64> = v.iter().map(|x| x * k).collect();
                prop_assert_eq!(primitive(&scaled).unwrap(), w);
            }
        }
    }
}
