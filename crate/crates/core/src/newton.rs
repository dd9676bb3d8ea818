//! Extended Newton diagrams stored by their minimal generators.
//!
//! A diagram is the convex hull of the union of positive octants shifted to
//! its generators. Only the componentwise-minimal exponents matter for every
//! query here, so construction discards dominated points (Dickson reduction).
//! Geometric queries (membership, inclusion) go through exact LP feasibility
//! rather than a facet description.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{check_dim, ExponentVector, SupportSet, WeightVector};
use crate::lp::{lp_feasible, Constraint, Relation};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonDiagram {
    dim: usize,
    generators: Vec<ExponentVector>,
}

/// Componentwise-minimal elements, in ascending lexicographic order.
pub fn dickson_reduce<'a>(points: impl IntoIterator<Item = &'a ExponentVector>) -> Vec<ExponentVector> {
    let mut pts: Vec<&ExponentVector> = points.into_iter().collect();
    pts.sort();
    pts.dedup();
    let mut out: Vec<ExponentVector> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let dominated = pts
            .iter()
            .enumerate()
            .any(|(j, q)| j != i && q.divides(p) && q != p);
        if !dominated {
            out.push((*p).clone());
        }
    }
    out
}

impl NewtonDiagram {
    /// The diagram of a support: its Dickson-reduced point set.
    pub fn from_support(s: &SupportSet) -> Result<Self> {
        check_dim(s.dim())?;
        Ok(NewtonDiagram {
            dim: s.dim(),
            generators: dickson_reduce(s.points()),
        })
    }

    /// Builds a diagram from raw points (reduced on construction).
    pub fn from_points(dim: usize, points: &[Vec<u64>]) -> Result<Self> {
        NewtonDiagram::from_support(&SupportSet::from_vecs(dim, points)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// True if the origin is a generator, i.e. `f(0) != 0`.
    pub fn has_origin(&self) -> bool {
        self.generators.iter().any(ExponentVector::is_origin)
    }

    pub fn to_support(&self) -> SupportSet {
        SupportSet::new(self.dim, self.generators.iter().cloned()).expect("nonempty by construction")
    }

    fn check(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }

    /// `w(f)`: the least `w`-weight of a generator.
    pub fn weight_of(&self, w: &WeightVector) -> Result<u128> {
        self.check(w.dim())?;
        Ok(self.weight_of_raw(w.coords()))
    }

    pub(crate) fn weight_of_raw(&self, w: &[u64]) -> u128 {
        self.generators
            .iter()
            .map(|m| m.dot(w))
            .min()
            .expect("nonempty diagram")
    }

    /// Whether `p` lies in the diagram: some convex combination of the
    /// generators is componentwise `<= p`.
    pub fn contains_point(&self, p: &[Rational]) -> Result<bool> {
        self.check(p.len())?;
        // Quick accept: a generator below p.
        if self.generators.iter().any(|m| {
            m.coords()
                .iter()
                .zip(p)
                .all(|(&c, x)| Rational::from(c) <= *x)
        }) {
            return Ok(true);
        }
        let k = self.generators.len();
        let mut sys = Vec::with_capacity(self.dim + 1);
        sys.push(Constraint::new(vec![Rational::one(); k], Relation::Eq, Rational::one()));
        for (j, bound) in p.iter().enumerate() {
            let coeffs = self
                .generators
                .iter()
                .map(|m| Rational::from(m.coords()[j]))
                .collect();
            sys.push(Constraint::new(coeffs, Relation::Le, bound.clone()));
        }
        lp_feasible(&sys)
    }

    /// [`contains_point`](Self::contains_point) for a lattice point.
    pub fn contains_lattice_point(&self, p: &ExponentVector) -> Result<bool> {
        let q: Vec<Rational> = p.coords().iter().map(|&c| Rational::from(c)).collect();
        self.contains_point(&q)
    }

    /// `small ⊆ self`: every generator of `small` lies in `self`.
    pub fn includes(&self, small: &NewtonDiagram) -> Result<bool> {
        self.check(small.dim)?;
        for g in &small.generators {
            if !self.contains_lattice_point(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Diagram JSON: `{"n": 3, "points": [[3,0,0],[0,7,0],[0,0,11]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub n: usize,
    pub points: Vec<Vec<u64>>,
}

impl DiagramJson {
    pub fn to_diagram(&self) -> Result<NewtonDiagram> {
        if self.points.is_empty() {
            return Err(Error::EmptySupport);
        }
        NewtonDiagram::from_points(self.n, &self.points)
    }

    pub fn parse(text: &str) -> Result<NewtonDiagram> {
        let j: DiagramJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(e.to_string()))?;
        j.to_diagram()
    }
}

impl From<&NewtonDiagram> for DiagramJson {
    fn from(d: &NewtonDiagram) -> Self {
        DiagramJson {
            n: d.dim,
            points: d.generators.iter().map(|g| g.coords().to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::primitive;
    use proptest::prelude::*;

    fn gens(d: &NewtonDiagram) -> Vec<Vec<u64>> {
        d.generators().iter().map(|g| g.coords().to_vec()).collect()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn reduction_examples() {
        let d = NewtonDiagram::from_points(3, &[vec![2, 0, 0], vec![2, 1, 0], vec![0, 3, 0]]).unwrap();
        assert_eq!(gens(&d), vec![vec![0, 3, 0], vec![2, 0, 0]]);
        let d = NewtonDiagram::from_points(3, &[vec![3, 0, 0], vec![0, 7, 0], vec![0, 0, 11]]).unwrap();
        assert_eq!(d.generators().len(), 3);
        let d = NewtonDiagram::from_points(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(gens(&d), vec![vec![1, 1]]);
    }

    #[test]
    fn weight_examples() {
        let d = NewtonDiagram::from_points(3, &[vec![3, 0, 0], vec![0, 7, 0], vec![0, 0, 11]]).unwrap();
        assert_eq!(d.weight_of(&primitive(&[2, 1, 1]).unwrap()).unwrap(), 6);
        let d = NewtonDiagram::from_points(3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 6]]).unwrap();
        assert_eq!(d.weight_of(&primitive(&[3, 2, 1]).unwrap()).unwrap(), 6);
        let d = NewtonDiagram::from_points(3, &[vec![0, 0, 5]]).unwrap();
        assert_eq!(d.weight_of(&primitive(&[1, 1, 0]).unwrap()).unwrap(), 0);
        assert!(d.weight_of(&primitive(&[1, 1]).unwrap()).is_err());
    }

    #[test]
    fn membership_examples() {
        let d = NewtonDiagram::from_points(3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 6]]).unwrap();
        // (1,1,1) sits on the face 3a + 2b + c = 6.
        assert!(d.contains_point(&q(&[1, 1, 1])).unwrap());
        // Strictly below the face: z^3, z^4, z^5, y z^2, y z^3, x z^2.
        for p in [[0, 0, 3], [0, 0, 4], [0, 0, 5], [0, 1, 2], [0, 1, 3], [1, 0, 2]] {
            assert!(!d.contains_point(&q(&p)).unwrap(), "{p:?}");
        }
        let below = vec![Rational::new(1, 1), Rational::new(1, 1), Rational::new(9, 10)];
        assert!(!d.contains_point(&below).unwrap());
        for g in d.generators() {
            assert!(d.contains_lattice_point(g).unwrap());
        }
        let d = NewtonDiagram::from_points(3, &[vec![2, 0, 0]]).unwrap();
        assert!(d.contains_point(&q(&[5, 5, 5])).unwrap());
        assert!(d.contains_point(&q(&[1, 1])).is_err());
    }

    #[test]
    fn inclusion_examples() {
        let a = NewtonDiagram::from_points(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let b = NewtonDiagram::from_points(2, &[vec![2, 2]]).unwrap();
        assert!(a.includes(&a).unwrap());
        assert!(a.includes(&b).unwrap());
        assert!(!b.includes(&a).unwrap());

        let x2y4z4 = NewtonDiagram::from_points(3, &[vec![2, 0, 0], vec![0, 4, 0], vec![0, 0, 4]]).unwrap();
        let x2y3z6 = NewtonDiagram::from_points(3, &[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 6]]).unwrap();
        let x3y3z3 = NewtonDiagram::from_points(3, &[vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap();
        assert!(!x2y4z4.includes(&x2y3z6).unwrap());
        assert!(!x2y3z6.includes(&x2y4z4).unwrap());
        // Diagrams above 2a + b + c = 4 sit inside Γ⁺(x²+y⁴+z⁴).
        let above = NewtonDiagram::from_points(3, &[vec![2, 0, 0], vec![0, 2, 2], vec![1, 1, 1], vec![0, 0, 5]]).unwrap();
        assert!(x2y4z4.includes(&above).unwrap());
        // Diagrams above a + b + c = 3 sit inside Γ⁺(x³+y³+z³).
        let cubic = NewtonDiagram::from_points(3, &[vec![1, 1, 1], vec![0, 3, 0], vec![2, 0, 1], vec![0, 0, 4]]).unwrap();
        assert!(x3y3z3.includes(&cubic).unwrap());
        // y³ lies below 2a + b + c = 4.
        assert!(!x2y4z4.includes(&x3y3z3).unwrap());
    }

    #[test]
    fn diagram_json() {
        let d = DiagramJson::parse(r#"{"n": 3, "points": [[3,0,0],[0,7,0],[0,0,11],[3,1,0]]}"#).unwrap();
        assert_eq!(d.generators().len(), 3);
        assert!(DiagramJson::parse(r#"{"n": 3, "points": []}"#).is_err());
        assert!(DiagramJson::parse(r#"{"n": 3, "points": [[1,2]]}"#).is_err());
        assert!(DiagramJson::parse(r#"{"n": 1, "points": [[1]]}"#).is_err());
        assert!(DiagramJson::parse("nope").is_err());
    }

    fn arb_points(n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(proptest::collection::vec(0u64..6, n), 1..7)
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_weight_preserving(
            pts in arb_points(3),
            w in proptest::collection::vec(0u64..5, 3),
        ) {
            let d = NewtonDiagram::from_points(3, &pts).unwrap();
            let again = NewtonDiagram::from_support(&d.to_support()).unwrap();
            prop_assert_eq!(&again, &d);
            for a in d.generators() {
                for b in d.generators() {
                    prop_assert!(a == b || !a.divides(b));
                }
            }
            if let Ok(w) = primitive(&w) {
                let direct = pts.iter().map(|p| ExponentVector::new(p.clone()).dot(w.coords())).min().unwrap();
                prop_assert_eq!(d.weight_of(&w).unwrap(), direct);
            }
        }

        #[test]
        fn octant_closure(pts in arb_points(3), delta in proptest::collection::vec(0u64..4, 3), pick in 0usize..8) {
            let d = NewtonDiagram::from_points(3, &pts).unwrap();
            let g = &d.generators()[pick % d.generators().len()];
            let p: Vec<u64> = g.coords().iter().zip(&delta).map(|(a, b)| a + b).collect();
            prop_assert!(d.contains_lattice_point(&ExponentVector::new(p)).unwrap());
        }

        #[test]
        fn inclusion_is_a_partial_order(a in arb_points(3), b in arb_points(3), c in arb_points(3)) {
            let (a, b, c) = (
                NewtonDiagram::from_points(3, &a).unwrap(),
                NewtonDiagram::from_points(3, &b).unwrap(),
                NewtonDiagram::from_points(3, &c).unwrap(),
            );
            prop_assert!(a.includes(&a).unwrap());
            let (ab, ba) = (a.includes(&b).unwrap(), b.includes(&a).unwrap());
            if ab && ba {
                // Equal hulls; the minimal generators can still differ only by
                // points inside the hull, so compare by weights instead.
                for w in [[1u64, 1, 1], [2, 1, 1], [1, 2, 3], [3, 1, 2]] {
                    let w = primitive(&w).unwrap();
                    prop_assert_eq!(a.weight_of(&w).unwrap(), b.weight_of(&w).unwrap());
                }
            }
            if ab && b.includes(&c).unwrap() {
                prop_assert!(a.includes(&c).unwrap());
            }
        }

        #[test]
        fn inclusion_orders_weights(a in arb_points(3), b in arb_points(3),
                                    w in proptest::collection::vec(0u64..6, 3)) {
            let big = NewtonDiagram::from_points(3, &a).unwrap();
            let small = NewtonDiagram::from_points(3, &b).unwrap();
            if big.includes(&small).unwrap() {
                if let Ok(w) = primitive(&w) {
                    prop_assert!(small.weight_of(&w).unwrap() >= big.weight_of(&w).unwrap());
                }
            }
        }

        // Adding random points from a fixed box to a diagram can only enlarge
        // it; the resulting chain stabilizes after finitely many strict steps.
        #[test]
        fn dickson_chain_stabilizes(seq in proptest::collection::vec(proptest::collection::vec(0u64..4, 3), 1..40)) {
            let mut pts = vec![seq[0].clone()];
            let mut current = NewtonDiagram::from_points(3, &pts).unwrap();
            let mut strict_steps = 0;
            for p in &seq[1..] {
                pts.push(p.clone());
                let next = NewtonDiagram::from_points(3, &pts).unwrap();
                prop_assert!(next.includes(&current).unwrap());
                if !current.includes(&next).unwrap() {
                    strict_steps += 1;
                }
                current = next;
            }
            // Each strict step adds a lattice point of the 4x4x4 box not in the
            // previous diagram, so there are fewer than 64 of them.
            prop_assert!(strict_steps < 64);
        }
    }
}
