//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex over [`Rational`] with Bland's rule for
//! both the entering and the leaving variable, so it terminates on degenerate
//! programs and always returns the same vertex for the same input. Programs
//! here have at most a few hundred rows; nothing is done for scale.

use crate::error::{Error, Result};
use crate::lattice::ExponentVector;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `coeffs · x (relation) rhs`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        solution: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize, z: &mut [Rational]) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row, &pivot_row, c);
            }
        }
        eliminate(z, &pivot_row, c);
        self.basis[r] = c;
    }

    /// Runs simplex on the `z_j - c_j` row `z`, letting only columns for which
    /// `allowed` holds enter the basis.
    fn run(&mut self, z: &mut [Rational], allowed: &dyn Fn(usize) -> bool) -> Step {
        loop {
            let entering = (0..self.ncols).find(|&j| allowed(j) && z[j].is_negative());
            let Some(c) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio || (ratio == lratio && self.basis[r] < self.basis[lr]) {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
            match leave {
                None => return Step::Unbounded,
                Some((r, _)) => self.pivot(r, c, z),
            }
        }
    }

    fn objective_row(&self, costs: &[Rational]) -> Vec<Rational> {
        let mut z: Vec<Rational> = (0..=self.ncols)
            .map(|j| if j < costs.len() { -&costs[j] } else { Rational::zero() })
            .collect();
        for (r, &b) in self.basis.iter().enumerate() {
            if b < costs.len() && !costs[b].is_zero() {
                for (zj, a) in z.iter_mut().zip(&self.rows[r]) {
                    if !a.is_zero() {
                        *zj += &(&costs[b] * a);
                    }
                }
            }
        }
        z
    }
}

fn eliminate(row: &mut [Rational], pivot_row: &[Rational], c: usize) {
    let f = row[c].clone();
    if f.is_zero() {
        return;
    }
    for (v, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *v -= &(&f * p);
        }
    }
}

fn check_dims(nvars: usize, constraints: &[Constraint]) -> Result<()> {
    for c in constraints {
        if c.coeffs.len() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: c.coeffs.len(),
            });
        }
    }
    Ok(())
}

/// Maximizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn maximize(objective: &[Rational], constraints: &[Constraint]) -> Result<LpOutcome> {
    let nvars = objective.len();
    check_dims(nvars, constraints)?;

    // Normalize to nonnegative right-hand sides.
    let rows: Vec<(Vec<Rational>, Relation, Rational)> = constraints
        .iter()
        .map(|c| {
            if c.rhs.is_negative() {
                let rel = match c.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (c.coeffs.iter().map(|x| -x).collect(), rel, -&c.rhs)
            } else {
                (c.coeffs.clone(), c.relation, c.rhs.clone())
            }
        })
        .collect();

    let nslack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let nart = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let art_start = nvars + nslack;
    let ncols = art_start + nart;

    let mut tab = Tableau {
        rows: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        ncols,
    };
    let (mut s, mut a) = (nvars, art_start);
    for (coeffs, rel, rhs) in rows {
        let mut row = vec![Rational::zero(); ncols + 1];
        row[..nvars].clone_from_slice(&coeffs);
        row[ncols] = rhs;
        match rel {
            Relation::Le => {
                row[s] = Rational::one();
                tab.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -Rational::one();
                row[a] = Rational::one();
                tab.basis.push(a);
                s += 1;
                a += 1;
            }
            Relation::Eq => {
                row[a] = Rational::one();
                tab.basis.push(a);
                a += 1;
            }
        }
        tab.rows.push(row);
    }

    if nart > 0 {
        // Phase one: maximize -(sum of artificials).
        let mut costs = vec![Rational::zero(); ncols];
        for c in costs.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        let mut z = tab.objective_row(&costs);
        tab.run(&mut z, &|_| true);
        if z[ncols].is_negative() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j, &mut z),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let mut z = tab.objective_row(objective);
    match tab.run(&mut z, &|j| j < art_start) {
        Step::Unbounded => Ok(LpOutcome::Unbounded),
        Step::Optimal => {
            let mut solution = vec![Rational::zero(); nvars];
            for (r, &b) in tab.basis.iter().enumerate() {
                if b < nvars {
                    solution[b] = tab.rhs(r).clone();
                }
            }
            Ok(LpOutcome::Optimal {
                value: z[ncols].clone(),
                solution,
            })
        }
    }
}

/// True iff a solution with all variables `>= 0` exists.
///
/// All constraints must have the same number of coefficients.
pub fn lp_feasible(constraints: &[Constraint]) -> Result<bool> {
    let Some(first) = constraints.first() else {
        return Ok(true);
    };
    let nvars = first.coeffs.len();
    let zero = vec![Rational::zero(); nvars];
    Ok(!matches!(maximize(&zero, constraints)?, LpOutcome::Infeasible))
}

/// Optimum of `max t` s.t. `sum u = 1`, `u >= 0`, `<u, m> >= t` for all generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximinSolution {
    pub value: Rational,
    pub direction: Vec<Rational>,
}

impl MaximinSolution {
    /// `min_m <u, m>` for an arbitrary direction `u`.
    pub fn evaluate(direction: &[Rational], generators: &[ExponentVector]) -> Rational {
        generators
            .iter()
            .map(|m| {
                m.coords()
                    .iter()
                    .zip(direction)
                    .map(|(&c, u)| Rational::from(c) * u)
                    .sum::<Rational>()
            })
            .min()
            .expect("nonempty generators")
    }
}

pub(crate) fn maximin_constraints(generators: &[ExponentVector], n: usize) -> Vec<Constraint> {
    let mut cons: Vec<Constraint> = generators
        .iter()
        .map(|m| {
            let mut coeffs: Vec<Rational> = m.coords().iter().map(|&c| -Rational::from(c)).collect();
            coeffs.push(Rational::one());
            Constraint::new(coeffs, Relation::Le, Rational::zero())
        })
        .collect();
    let mut simplex = vec![Rational::one(); n];
    simplex.push(Rational::zero());
    cons.push(Constraint::new(simplex, Relation::Eq, Rational::one()));
    cons
}

/// Solves the maximin program over the standard simplex. Variables are
/// ordered `u_1..u_n, t`; the returned vertex is deterministic.
pub fn maximin_lp(generators: &[ExponentVector], n: usize) -> Result<MaximinSolution> {
    if generators.is_empty() {
        return Err(Error::EmptySupport);
    }
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
    }
    let mut objective = vec![Rational::zero(); n];
    objective.push(Rational::one());
    match maximize(&objective, &maximin_constraints(generators, n))? {
        LpOutcome::Optimal { value, mut solution } => {
            solution.truncate(n);
            Ok(MaximinSolution {
                value,
                direction: solution,
            })
        }
        other => unreachable!("maximin program is feasible and bounded, got {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ev(v: &[Vec<u64>]) -> Vec<ExponentVector> {
        v.iter().cloned().map(ExponentVector::new).collect()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn feasibility_examples() {
        let sys = vec![
            Constraint::new(ints(&[1, 1]), Relation::Eq, q(1, 1)),
            Constraint::new(ints(&[2, 0]), Relation::Le, q(5, 1)),
            Constraint::new(ints(&[0, 3]), Relation::Le, q(5, 1)),
        ];
        assert!(lp_feasible(&sys).unwrap());
        let sys = vec![
            Constraint::new(ints(&[1]), Relation::Eq, q(1, 1)),
            Constraint::new(ints(&[1]), Relation::Le, q(1, 2)),
        ];
        assert!(!lp_feasible(&sys).unwrap());
    }

    #[test]
    fn feasibility_rejects_ragged_rows() {
        let sys = vec![
            Constraint::new(ints(&[1, 1]), Relation::Eq, q(1, 1)),
            Constraint::new(ints(&[1]), Relation::Le, q(1, 1)),
        ];
        assert!(matches!(lp_feasible(&sys), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn negative_rhs_and_ge_rows() {
        // x + y >= 2, -x <= -1/2 (x >= 1/2), maximize -x - y
        let sys = vec![
            Constraint::new(ints(&[1, 1]), Relation::Ge, q(2, 1)),
            Constraint::new(ints(&[-1, 0]), Relation::Le, q(-1, 2)),
        ];
        match maximize(&ints(&[-1, -1]), &sys).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-2, 1)),
            o => panic!("{o:?}"),
        }
        assert_eq!(maximize(&ints(&[1, 0]), &sys).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let sys = vec![
            Constraint::new(ints(&[1, 1]), Relation::Eq, q(1, 1)),
            Constraint::new(ints(&[2, 2]), Relation::Eq, q(2, 1)),
        ];
        match maximize(&ints(&[1, 2]), &sys).unwrap() {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, q(2, 1));
                assert_eq!(solution, vec![q(0, 1), q(1, 1)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn maximin_simplex_diagram() {
        let sol = maximin_lp(&ev(&[vec![3, 0, 0], vec![0, 7, 0], vec![0, 0, 11]]), 3).unwrap();
        assert_eq!(sol.value, q(231, 131));
        assert_eq!(sol.direction, vec![q(77, 131), q(33, 131), q(21, 131)]);
    }

    #[test]
    fn maximin_symmetric_plane() {
        let sol = maximin_lp(&ev(&[vec![1, 0], vec![0, 1]]), 2).unwrap();
        assert_eq!(sol.value, q(1, 2));
        assert_eq!(sol.direction, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn maximin_with_free_coordinate() {
        let sol = maximin_lp(&ev(&[vec![2, 0, 0], vec![0, 3, 0]]), 3).unwrap();
        assert_eq!(sol.value, q(6, 5));
        assert_eq!(sol.direction, vec![q(3, 5), q(2, 5), q(0, 1)]);
    }

    fn membership_system(p: [i64; 3]) -> Vec<Constraint> {
        let gens = [[2u64, 0, 0], [0, 3, 0], [0, 0, 6]];
        let mut sys = vec![Constraint::new(ints(&[1, 1, 1]), Relation::Eq, q(1, 1))];
        for j in 0..3 {
            let coeffs = gens.iter().map(|g| Rational::from(g[j])).collect();
            sys.push(Constraint::new(coeffs, Relation::Le, q(p[j], 1)));
        }
        sys
    }

    #[test]
    fn membership_systems_against_plane() {
        // The lower face of conv{(2,0,0),(0,3,0),(0,0,6)} + octant lies on
        // 3a + 2b + c = 6; a point is inside iff 3a + 2b + c >= 6.
        let plane = |p: [i64; 3]| 3 * p[0] + 2 * p[1] + p[2];
        for p in [[1, 1, 1], [0, 0, 3], [0, 1, 2], [1, 0, 2], [0, 1, 3], [1, 1, 0], [2, 0, 0], [0, 2, 2]] {
            assert_eq!(lp_feasible(&membership_system(p)).unwrap(), plane(p) >= 6, "{p:?}");
        }
    }

    // Enumerates every basic solution of the maximin program and keeps the
    // best objective value.
    fn maximin_by_vertices(gens: &[Vec<u64>], n: usize) -> Rational {
        // Variables u_1..u_n, t. A vertex is fixed by n+1 tight constraints
        // among: u_j = 0, <u,m> = t, plus sum u = 1 which is always tight.
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            let mut r = vec![Rational::zero(); n + 2];
            r[j] = Rational::one();
            rows.push(r);
        }
        for m in gens {
            let mut r: Vec<Rational> = m.iter().map(|&c| Rational::from(c)).collect();
            r.push(-Rational::one());
            r.push(Rational::zero());
            rows.push(r);
        }
        let mut simplex = vec![Rational::one(); n];
        simplex.push(Rational::zero());
        simplex.push(Rational::one());
        let mut best: Option<Rational> = None;
        let k = rows.len();
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let mut sys: Vec<Vec<Rational>> = idx.iter().map(|&i| rows[i].clone()).collect();
            sys.push(simplex.clone());
            if let Some(x) = solve_square(sys) {
                let feasible = x[..n].iter().all(|v| !v.is_negative())
                    && gens.iter().all(|m| {
                        let s: Rational = m.iter().zip(&x).map(|(&c, u)| Rational::from(c) * u).sum();
                        s >= x[n]
                    });
                if feasible {
                    best = Some(match best {
                        Some(b) if b >= x[n] => b,
                        _ => x[n].clone(),
                    });
                }
            }
            // next combination of n indices out of k
            let mut i = n;
            loop {
                if i == 0 {
                    return best.unwrap();
                }
                i -= 1;
                if idx[i] != i + k - n {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..n {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn solve_square(mut a: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
        let n = a.len();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let pv = a[col][col].clone();
            for v in a[col].iter_mut() {
                *v = &*v / &pv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pr = a[col].clone();
                    for (v, p) in a[r].iter_mut().zip(&pr) {
                        *v -= &(&f * p);
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n].clone()).collect())
    }

    #[test]
    fn vertex_enumeration_agrees_on_spec_examples() {
        assert_eq!(maximin_by_vertices(&[vec![2, 0, 0], vec![0, 3, 0]], 3), q(6, 5));
        assert_eq!(
            maximin_by_vertices(&[vec![3, 0, 0], vec![0, 7, 0], vec![0, 0, 11]], 3),
            q(231, 131)
        );
    }

    proptest! {
        #[test]
        fn maximin_matches_vertex_enumeration(
            gens in proptest::collection::vec(proptest::collection::vec(0u64..7, 3), 1..6)
        ) {
            let sol = maximin_lp(&ev(&gens), 3).unwrap();
            prop_assert_eq!(&sol.value, &maximin_by_vertices(&gens, 3));
            // certificate: u* attains t*
            prop_assert_eq!(MaximinSolution::evaluate(&sol.direction, &ev(&gens)), sol.value.clone());
            let total: Rational = sol.direction.iter().cloned().sum();
            prop_assert_eq!(total, Rational::one());
        }

        #[test]
        fn maximin_invariant_under_permutation_and_duplication(
            gens in proptest::collection::vec(proptest::collection::vec(0u64..9, 3), 1..6),
            rot in 0usize..6,
        ) {
            let base = maximin_lp(&ev(&gens), 3).unwrap().value;
            let mut shuffled = gens.clone();
            shuffled.rotate_left(rot % gens.len());
            shuffled.reverse();
            shuffled.push(gens[0].clone());
            prop_assert_eq!(maximin_lp(&ev(&shuffled), 3).unwrap().value, base);
        }

        #[test]
        fn no_direction_beats_optimum(
            gens in proptest::collection::vec(proptest::collection::vec(0u64..9, 3), 1..6),
            a in 0i64..10, b in 0i64..10, c in 0i64..10,
        ) {
            prop_assume!(a + b + c > 0);
            let s = a + b + c;
            let u = vec![q(a, s), q(b, s), q(c, s)];
            let sol = maximin_lp(&ev(&gens), 3).unwrap();
            prop_assert!(MaximinSolution::evaluate(&u, &ev(&gens)) <= sol.value);
        }
    }
}
