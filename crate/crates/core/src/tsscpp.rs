//! Inequalities valid on the magog matrix polytope, the complete description
//! at order 3, and linear optimisation over the known relaxation.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::enumerate::magog_matrices;
use crate::error::{Error, Result};
use crate::hull::affine_dimension;
use crate::linalg::{rank, solve_unique};
use crate::lp::{self, LpOutcome, StandardForm};
use crate::point::RationalMatrixPoint;
use crate::rational::{int, ratio, Rational};
use crate::validate::{Collector, Constraint, Mode, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Equal,
    AtLeast,
}

/// `coeffs · x (= or >=) rhs` over the `n * n` entries in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearConstraint {
    pub label: Violation,
    pub coeffs: Vec<i64>,
    pub sense: Sense,
    pub rhs: i64,
}

impl LinearConstraint {
    pub fn value(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).filter(|(&c, _)| c != 0).map(|(&c, v)| int(c) * v).sum()
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = self.value(x);
        match self.sense {
            Sense::Equal => v == int(self.rhs),
            Sense::AtLeast => v >= int(self.rhs),
        }
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == int(self.rhs)
    }
}

struct Builder {
    n: usize,
    out: Vec<LinearConstraint>,
}

impl Builder {
    fn at(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    /// Adds a constraint over 1-based cells; repeated cells accumulate.
    fn push(&mut self, constraint: Constraint, idx: &[usize], cells: &[(usize, usize, i64)], sense: Sense, rhs: i64) {
        let mut coeffs = vec![0; self.n * self.n];
        for &(i, j, c) in cells {
            coeffs[self.at(i, j)] += c;
        }
        self.out.push(LinearConstraint { label: Violation::new(constraint, idx), coeffs, sense, rhs });
    }

    fn row_cells(i: usize, upto: usize) -> impl Iterator<Item = (usize, usize, i64)> {
        (1..=upto).map(move |j| (i, j, 1))
    }

    fn col_cells(j: usize, upto: usize) -> impl Iterator<Item = (usize, usize, i64)> {
        (1..=upto).map(move |i| (i, j, 1))
    }
}

/// The inequalities defining square sign and magog matrices, relaxed to real
/// entries: unit row and column sums, column prefix sums in `[0, 1]`,
/// nonnegative row prefix sums, and every special inequality.
pub fn relaxation_constraints(n: usize) -> Vec<LinearConstraint> {
    let mut b = Builder { n, out: Vec::new() };
    for j in 1..=n {
        let cells: Vec<_> = Builder::col_cells(j, n).collect();
        b.push(Constraint::ColumnSum, &[j], &cells, Sense::Equal, 1);
    }
    for i in 1..=n {
        let cells: Vec<_> = Builder::row_cells(i, n).collect();
        b.push(Constraint::RowSum, &[i], &cells, Sense::Equal, 1);
    }
    for i in 1..=n {
        for j in 1..=n {
            let cells: Vec<_> = Builder::col_cells(j, i).collect();
            let negated: Vec<_> = cells.iter().map(|&(r, c, v)| (r, c, -v)).collect();
            b.push(Constraint::ColumnPrefix, &[i, j], &cells, Sense::AtLeast, 0);
            b.push(Constraint::ColumnPrefix, &[i, j], &negated, Sense::AtLeast, -1);
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let cells: Vec<_> = Builder::row_cells(i, j).collect();
            b.push(Constraint::RowPrefix, &[i, j], &cells, Sense::AtLeast, 0);
        }
    }
    for i in 1..n.saturating_sub(1) {
        for j in 1..n - 1 {
            let cells: Vec<_> = Builder::row_cells(i + 1, j)
                .chain(Builder::col_cells(j + 1, i + 1))
                .chain(Builder::col_cells(j, i).map(|(r, c, _)| (r, c, -1)))
                .collect();
            b.push(Constraint::Special, &[i, j], &cells, Sense::AtLeast, 0);
        }
    }
    b.out
}

/// [`relaxation_constraints`] together with the l-shape, top-row and
/// left-column inequalities valid on every magog matrix.
pub fn necessary_constraints(n: usize) -> Vec<LinearConstraint> {
    let mut b = Builder { n, out: relaxation_constraints(n) };
    for i in 1..n.saturating_sub(1) {
        for j in 1..n - 1 {
            if i + j < n - 1 {
                continue;
            }
            let cells: Vec<_> = Builder::row_cells(i + 1, j).chain(Builder::col_cells(j + 1, i + 1)).collect();
            b.push(Constraint::LShape, &[i, j], &cells, Sense::AtLeast, 1);
        }
    }
    for j in 1..n.saturating_sub(2) {
        let cells: Vec<_> = Builder::row_cells(2, j + 1).chain((j + 1..=n).map(|c| (1, c, 1))).collect();
        b.push(Constraint::TopRows, &[j], &cells, Sense::AtLeast, 1);
    }
    for i in 1..n.saturating_sub(2) {
        let cells: Vec<_> = Builder::col_cells(2, i + 1).chain((i + 1..=n).map(|r| (r, 1, 1))).collect();
        b.push(Constraint::LeftColumns, &[i], &cells, Sense::AtLeast, 1);
    }
    b.out
}

fn check_constraints(constraints: &[LinearConstraint], x: &[Rational], mode: Mode) -> ValidationReport {
    let mut c = Collector::new(mode);
    for k in constraints {
        if !k.holds(x) && c.fail(k.label.constraint, &k.label.indices) {
            return c.finish();
        }
    }
    c.finish()
}

pub fn check_magog_relaxation(p: &RationalMatrixPoint) -> ValidationReport {
    check_magog_relaxation_with(p, Mode::FirstFailure)
}

pub fn check_magog_relaxation_with(p: &RationalMatrixPoint, mode: Mode) -> ValidationReport {
    check_constraints(&relaxation_constraints(p.order()), p.entries(), mode)
}

/// Necessary, not sufficient, conditions for membership in the magog matrix
/// polytope.
pub fn check_necessary_inequalities(p: &RationalMatrixPoint) -> ValidationReport {
    check_necessary_inequalities_with(p, Mode::FirstFailure)
}

pub fn check_necessary_inequalities_with(p: &RationalMatrixPoint, mode: Mode) -> ValidationReport {
    check_constraints(&necessary_constraints(p.order()), p.entries(), mode)
}

/// True when `x` satisfies every constraint and the tight ones pin it down.
pub fn is_vertex(constraints: &[LinearConstraint], x: &[Rational]) -> bool {
    if !constraints.iter().all(|k| k.holds(x)) {
        return false;
    }
    let tight: Vec<Vec<Rational>> =
        constraints.iter().filter(|k| k.is_tight(x)).map(|k| k.coeffs.iter().map(|&c| int(c)).collect()).collect();
    rank(tight) == x.len()
}

/// Maximises `objective · x` over the points satisfying
/// [`necessary_constraints`]. Returns an optimal basic solution.
pub fn maximize_over_necessary(n: usize, objective: &[i64]) -> Result<RationalMatrixPoint> {
    let constraints = necessary_constraints(n);
    let dim = n * n;
    if objective.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: objective.len() });
    }
    let slacks: Vec<usize> =
        constraints.iter().enumerate().filter(|(_, k)| k.sense == Sense::AtLeast).map(|(r, _)| r).collect();
    let rows = constraints.len();
    // entries are shifted by one so that the variables are nonnegative
    let mut columns: Vec<Vec<i64>> = (0..dim).map(|v| constraints.iter().map(|k| k.coeffs[v]).collect()).collect();
    for &r in &slacks {
        let mut col = vec![0; rows];
        col[r] = -1;
        columns.push(col);
    }
    let rhs = constraints.iter().map(|k| int(k.rhs + k.coeffs.iter().sum::<i64>())).collect();
    let cost = objective.iter().map(|&c| int(-c)).chain(slacks.iter().map(|_| int(0))).collect();
    match lp::solve(&StandardForm::new(columns, rhs, cost)) {
        LpOutcome::Optimal { x, .. } => {
            let entries = x.into_iter().take(dim).map(|y| y - int(1)).collect();
            RationalMatrixPoint::from_flat(n, entries)
        }
        LpOutcome::Infeasible { .. } => Err(Error::Internal("the relaxation contains every magog matrix".into())),
        LpOutcome::Unbounded => Err(Error::Internal("the relaxation is bounded".into())),
    }
}

/// The two half-integer vertices of the order-3 relaxation that are not
/// magog matrices.
pub fn half_integer_relaxation_vertices() -> [RationalMatrixPoint; 2] {
    let h = ratio(1, 2);
    let (z, o) = (int(0), int(1));
    [
        RationalMatrixPoint::from_rows(vec![
            vec![h.clone(), z.clone(), h.clone()],
            vec![h.clone(), z.clone(), h.clone()],
            vec![z.clone(), o.clone(), z.clone()],
        ])
        .expect("square"),
        RationalMatrixPoint::from_rows(vec![
            vec![h.clone(), h.clone(), z.clone()],
            vec![z.clone(), z.clone(), o],
            vec![h.clone(), h, z],
        ])
        .expect("square"),
    ]
}

/// The complete description at order 3: six unit-sum equalities,
/// `a11, a12, a13, a31, a32 >= 0` and `a12 + a21 + a22 >= 1`.
pub fn tsscpp3_constraints() -> Vec<LinearConstraint> {
    let mut b = Builder { n: 3, out: Vec::new() };
    for j in 1..=3 {
        let cells: Vec<_> = Builder::col_cells(j, 3).collect();
        b.push(Constraint::ColumnSum, &[j], &cells, Sense::Equal, 1);
    }
    for i in 1..=3 {
        let cells: Vec<_> = Builder::row_cells(i, 3).collect();
        b.push(Constraint::RowSum, &[i], &cells, Sense::Equal, 1);
    }
    for (i, j) in [(1, 1), (1, 2), (1, 3), (3, 1), (3, 2)] {
        b.push(Constraint::EntryLower, &[i, j], &[(i, j, 1)], Sense::AtLeast, 0);
    }
    b.push(Constraint::LShape, &[1, 1], &[(1, 2, 1), (2, 1, 1), (2, 2, 1)], Sense::AtLeast, 1);
    b.out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetEvidence {
    pub inequality: Violation,
    pub tight_vertices: usize,
    /// Affine dimension spanned by the tight vertices.
    pub face_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tsscpp3Audit {
    pub basic_solutions: usize,
    pub vertices: Vec<Vec<Vec<String>>>,
    pub matches_magog: bool,
    pub polytope_dimension: usize,
    pub facets: Vec<FacetEvidence>,
    /// Both half-integer points are vertices of the order-3 relaxation.
    pub relaxation_has_half_integer_vertices: bool,
}

impl Tsscpp3Audit {
    pub fn passed(&self) -> bool {
        self.matches_magog
            && self.relaxation_has_half_integer_vertices
            && self.facets.iter().all(|f| f.face_dimension + 1 == self.polytope_dimension)
    }
}

/// Enumerates the basic solutions of [`tsscpp3_constraints`] and compares
/// the feasible ones with the seven magog matrices of order 3.
pub fn tsscpp3_vertex_audit() -> Result<Tsscpp3Audit> {
    let constraints = tsscpp3_constraints();
    let (equalities, inequalities): (Vec<_>, Vec<_>) = constraints.iter().partition(|k| k.sense == Sense::Equal);
    let to_row = |k: &LinearConstraint| k.coeffs.iter().map(|&c| int(c)).collect::<Vec<Rational>>();
    let eq_rank = rank(equalities.iter().map(|k| to_row(k)).collect());
    let dim = 9 - eq_rank;

    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut basic = 0;
    for subset in subsets(inequalities.len(), dim) {
        let chosen = equalities.iter().copied().chain(subset.iter().map(|&k| inequalities[k]));
        let (a, b): (Vec<_>, Vec<_>) = chosen.map(|k| (to_row(k), int(k.rhs))).unzip();
        let Some(x) = solve_unique(&a, &b) else { continue };
        basic += 1;
        if constraints.iter().all(|k| k.holds(&x)) {
            found.insert(x);
        }
    }

    let magog: BTreeSet<Vec<Rational>> =
        magog_matrices(3)?.map(|m| m.entries().iter().map(|&v| int(v as i64)).collect()).collect();
    let vertices: Vec<Vec<Rational>> = found.iter().cloned().collect();

    let facets = inequalities
        .iter()
        .map(|k| {
            let tight: Vec<Vec<Rational>> = vertices.iter().filter(|v| k.is_tight(v)).cloned().collect();
            FacetEvidence {
                inequality: k.label.clone(),
                tight_vertices: tight.len(),
                face_dimension: affine_dimension(&tight).unwrap_or(0),
            }
        })
        .collect();

    let relaxation = relaxation_constraints(3);
    let relaxation_has_half_integer_vertices =
        half_integer_relaxation_vertices().iter().all(|p| is_vertex(&relaxation, p.entries()));

    Ok(Tsscpp3Audit {
        basic_solutions: basic,
        vertices: vertices
            .iter()
            .map(|v| v.chunks(3).map(|r| r.iter().map(crate::rational::format_rational).collect()).collect())
            .collect(),
        matches_magog: found == magog,
        polytope_dimension: affine_dimension(&vertices).unwrap_or(0),
        facets,
        relaxation_has_half_integer_vertices,
    })
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SignMatrix;

    #[test]
    fn counts_of_inequalities() {
        // 2n equalities, 2n^2 column prefix, n^2 row prefix, (n-2)^2 special
        assert_eq!(relaxation_constraints(4).len(), 8 + 32 + 16 + 4);
        // l-shape pairs with i + j >= 3 for i, j in 1..=2, one top-row and one left-column
        assert_eq!(necessary_constraints(4).len() - relaxation_constraints(4).len(), 3 + 1 + 1);
    }

    #[test]
    fn half_integer_points() {
        for p in half_integer_relaxation_vertices() {
            assert!(check_magog_relaxation(&p).is_valid());
            assert!(!check_necessary_inequalities(&p).is_valid());
        }
        let [p, _] = half_integer_relaxation_vertices();
        let r = check_necessary_inequalities(&p);
        assert_eq!(r.first(), Some(&Violation::new(Constraint::LShape, &[1, 1])));
    }

    #[test]
    fn magog_matrices_pass() {
        for n in 1..=4 {
            for m in magog_matrices(n).unwrap() {
                let p = RationalMatrixPoint::from(&m);
                assert!(check_necessary_inequalities(&p).is_valid(), "{m:?}");
            }
        }
        let p132 = SignMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap();
        assert!(!check_necessary_inequalities(&RationalMatrixPoint::from(&p132)).is_valid());
    }

    #[test]
    fn order_three_audit() {
        let audit = tsscpp3_vertex_audit().unwrap();
        assert!(audit.passed(), "{audit:?}");
        assert_eq!(audit.vertices.len(), 7);
        assert_eq!(audit.polytope_dimension, 4);
        assert!(audit.facets.iter().all(|f| f.tight_vertices >= 4));
    }
}
