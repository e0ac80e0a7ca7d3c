//! Membership, convex decomposition and facet witnesses for the boolean
//! triangle polytope.
//!
//! Positions are `(i, c)` with row `1 <= i <= n - 1` and column
//! `n - i <= c <= n - 1`. Column `c` starts at row `n - c`. The `(i, j)`
//! diagonal inequality compares column `c = n - j` against column `c - 1`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::ConvexDecomposition;
use crate::point::RationalTrianglePoint;
use crate::rational::{int, is_integral, ratio, Rational};
use crate::triangle::{check_unit_triangle, diagonal_pairs, diagonal_slacks, BooleanTriangle, TriangularArray};
use crate::validate::{Mode, ValidationReport};

/// Complete membership test: entry bounds plus every diagonal inequality.
pub fn btp_contains(p: &RationalTrianglePoint) -> ValidationReport {
    btp_contains_with(p, Mode::FirstFailure)
}

pub fn btp_contains_with(p: &RationalTrianglePoint, mode: Mode) -> ValidationReport {
    check_unit_triangle(p, mode)
}

/// Labels of the integrality sweep down each column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    /// The column prefix sum leaves the integers at this entry.
    Plus,
    /// The column prefix sum returns to the integers at this entry.
    Minus,
    None,
}

/// Column prefix sums `S_c(i)`, summed from the top of column `c`.
pub fn column_prefix_sums(p: &RationalTrianglePoint) -> TriangularArray<Rational> {
    let n = p.order();
    let mut out = p.clone();
    for c in 1..n {
        for i in n - c + 1..n {
            let above = out.get(i - 1, c).clone();
            *out.get_mut(i, c) += above;
        }
    }
    out
}

pub fn labels(p: &RationalTrianglePoint) -> TriangularArray<Label> {
    let n = p.order();
    let sums = column_prefix_sums(p);
    let mut out = TriangularArray::filled(n, Label::None);
    for (i, c) in p.positions() {
        let before = if i == n - c { true } else { is_integral(sums.get(i - 1, c)) };
        let after = is_integral(sums.get(i, c));
        *out.get_mut(i, c) = match (before, after) {
            (true, false) => Label::Plus,
            (false, true) => Label::Minus,
            _ => Label::None,
        };
    }
    out
}

/// Number of non-integral entries plus non-integral diagonal differences
/// `p_{i,j} = S_{n-j}(i) - S_{n-j-1}(i)`.
pub fn integrality_measure(p: &RationalTrianglePoint) -> usize {
    let entries = p.entries().iter().filter(|v| !is_integral(v)).count();
    let diffs = diagonal_slacks(p).iter().filter(|(_, s)| !is_integral(s)).count();
    entries + diffs
}

/// One split of a fractional point into two points of the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitStep {
    pub labels: TriangularArray<Label>,
    /// Step towards the `(+)` direction, the `k'` of the construction.
    pub k_plus: Rational,
    /// Step towards the `(-)` direction, the `k''` of the construction.
    pub k_minus: Rational,
    /// `B' = B + k' D`.
    pub upper: RationalTrianglePoint,
    /// `B'' = B - k'' D`.
    pub lower: RationalTrianglePoint,
}

impl SplitStep {
    /// Weight of `B'`: `k'' / (k' + k'')`.
    pub fn upper_weight(&self) -> Rational {
        &self.k_minus / (&self.k_plus + &self.k_minus)
    }

    /// Weight of `B''`: `k' / (k' + k'')`.
    pub fn lower_weight(&self) -> Rational {
        &self.k_plus / (&self.k_plus + &self.k_minus)
    }
}

fn require_member(p: &RationalTrianglePoint) -> Result<()> {
    let report = btp_contains(p);
    if !report.is_valid() {
        return Err(Error::Precondition { what: "boolean triangle polytope membership", report });
    }
    Ok(())
}

/// Computes `k'`, `k''`, `B'` and `B''` for a point of the polytope.
/// Returns `None` when every entry is already integral.
pub fn split_step(p: &RationalTrianglePoint) -> Result<Option<SplitStep>> {
    require_member(p)?;
    if p.entries().iter().all(is_integral) {
        return Ok(None);
    }
    let n = p.order();
    let labels = labels(p);
    let sums = column_prefix_sums(p);
    let unbalanced = |i: usize, c: usize| c + i >= n && !is_integral(sums.get(i, c));

    let mut plus_bounds = Vec::new();
    let mut minus_bounds = Vec::new();
    for (i, c) in p.positions() {
        let v = p.get(i, c);
        match labels.get(i, c) {
            Label::Plus => {
                plus_bounds.push(int(1) - v);
                minus_bounds.push(v.clone());
            }
            Label::Minus => {
                plus_bounds.push(v.clone());
                minus_bounds.push(int(1) - v);
            }
            Label::None => {}
        }
    }
    for (i, j) in diagonal_pairs(n) {
        let c = n - j;
        let diff = sums.get(i, c) - sums.get(i, c - 1);
        match (unbalanced(i, c), unbalanced(i, c - 1)) {
            (true, false) => plus_bounds.push(int(1) - diff),
            (false, true) => minus_bounds.push(int(1) - diff),
            _ => {}
        }
    }
    let min = |v: Vec<Rational>| v.into_iter().min().ok_or_else(|| Error::Internal("no labelled entries".into()));
    let k_plus = min(plus_bounds)?;
    let k_minus = min(minus_bounds)?;
    if !k_plus.is_positive() || !k_minus.is_positive() {
        return Err(Error::Internal(format!("non-positive split step k' = {k_plus}, k'' = {k_minus}")));
    }
    let shifted = |k: &Rational| {
        let mut out = p.clone();
        for (i, c) in p.positions() {
            match labels.get(i, c) {
                Label::Plus => *out.get_mut(i, c) += k,
                Label::Minus => *out.get_mut(i, c) -= k,
                Label::None => {}
            }
        }
        out
    };
    let upper = shifted(&k_plus);
    let lower = shifted(&-k_minus.clone());
    Ok(Some(SplitStep { labels, k_plus, k_minus, upper, lower }))
}

fn to_boolean(p: &RationalTrianglePoint) -> Result<BooleanTriangle> {
    let rows: Vec<Vec<i64>> =
        p.rows().map(|r| r.iter().map(|v| if v.is_one() { 1 } else { 0 }).collect()).collect();
    if p.entries().iter().any(|v| !v.is_zero() && !v.is_one()) {
        return Err(Error::Internal("an integral point has an entry outside {0, 1}".into()));
    }
    if p.order() == 1 {
        return Ok(BooleanTriangle::zero(1));
    }
    BooleanTriangle::from_rows(&rows).map_err(|e| Error::Internal(format!("integral point is not a vertex: {e}")))
}

type Terms = Vec<(Rational, BooleanTriangle)>;

struct Decomposer {
    memo: HashMap<RationalTrianglePoint, Terms>,
}

impl Decomposer {
    fn run(&mut self, p: &RationalTrianglePoint) -> Result<Terms> {
        if let Some(t) = self.memo.get(p) {
            return Ok(t.clone());
        }
        let terms = match split_step(p)? {
            None => vec![(int(1), to_boolean(p)?)],
            Some(step) => {
                let measure = integrality_measure(p);
                for (name, q) in [("B'", &step.upper), ("B''", &step.lower)] {
                    let report = btp_contains(q);
                    if !report.is_valid() {
                        return Err(Error::Internal(format!("{name} left the polytope: {report}")));
                    }
                    if integrality_measure(q) >= measure {
                        return Err(Error::Internal(format!("{name} did not reduce the integrality measure")));
                    }
                }
                let (wu, wl) = (step.upper_weight(), step.lower_weight());
                let mut out = Terms::new();
                for (w, v) in self.run(&step.upper)? {
                    out.push((w * &wu, v));
                }
                for (w, v) in self.run(&step.lower)? {
                    out.push((w * &wl, v));
                }
                ConvexDecomposition::from_terms(out).into_terms().into_iter().map(|t| (t.weight, t.vertex)).collect()
            }
        };
        self.memo.insert(p.clone(), terms.clone());
        Ok(terms)
    }
}

/// Writes a point of the polytope as a convex combination of boolean
/// triangles by repeated splitting. The result is checked before returning.
pub fn btp_decompose(p: &RationalTrianglePoint) -> Result<ConvexDecomposition<BooleanTriangle>> {
    require_member(p)?;
    let terms = Decomposer { memo: HashMap::new() }.run(p)?;
    let d = ConvexDecomposition::from_terms(terms);
    if !d.reproduces(p.entries()) {
        return Err(Error::Internal("the decomposition does not reproduce the point".into()));
    }
    Ok(d)
}

/// One of the defining inequalities of the polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Facet {
    /// `b_{i,c} >= 0`.
    Lower(usize, usize),
    /// `b_{i,c} <= 1`.
    Upper(usize, usize),
    /// The `(i, j)` diagonal inequality.
    Diagonal(usize, usize),
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Facet::Lower(i, c) => write!(f, "entry ({i}, {c}) >= 0"),
            Facet::Upper(i, c) => write!(f, "entry ({i}, {c}) <= 1"),
            Facet::Diagonal(i, j) => write!(f, "({i}, {j})-diagonal"),
        }
    }
}

/// Slack of every defining inequality at `p`: bounds in row-major order,
/// then diagonal inequalities.
pub fn inequality_slacks(p: &RationalTrianglePoint) -> Vec<(Facet, Rational)> {
    let mut out = Vec::new();
    for (i, c) in p.positions() {
        out.push((Facet::Lower(i, c), p.get(i, c).clone()));
        out.push((Facet::Upper(i, c), int(1) - p.get(i, c)));
    }
    for ((i, j), s) in diagonal_slacks(p) {
        out.push((Facet::Diagonal(i, j), s));
    }
    out
}

/// The point lying on `facet` and strictly inside every other inequality.
pub fn facet_witness(n: usize, facet: Facet) -> RationalTrianglePoint {
    let mut w = TriangularArray::filled(n, ratio(1, 2));
    match facet {
        Facet::Lower(i, c) => {
            *w.get_mut(i, c) = int(0);
            if c + 1 < n {
                *w.get_mut(i, c + 1) = ratio(1, 4);
            }
        }
        Facet::Upper(i, c) => {
            *w.get_mut(i, c) = int(1);
            if c > n - i {
                *w.get_mut(i, c - 1) = ratio(3, 4);
            } else if c >= 2 {
                *w.get_mut(i + 1, c - 1) = ratio(3, 4);
            }
        }
        Facet::Diagonal(i, j) => {
            let c = n - j;
            *w.get_mut(n - c, c) = ratio(3, 4);
            *w.get_mut(i, c) = ratio(3, 4);
            if i + 1 < n {
                *w.get_mut(i + 1, c) = ratio(1, 4);
            }
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetCheck {
    pub facet: Facet,
    /// Every inequality the witness meets with equality.
    pub tight: Vec<Facet>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetAudit {
    pub n: usize,
    pub inequalities: usize,
    pub certified: usize,
    /// `(n - 1)(3n - 2) / 2`.
    pub expected: usize,
    pub checks: Vec<FacetCheck>,
}

impl FacetAudit {
    pub fn passed(&self) -> bool {
        self.certified == self.inequalities && self.certified == self.expected
    }
}

impl fmt::Display for FacetAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order {}: {}/{} inequalities certified as facets (expected {})", self.n, self.certified, self.inequalities, self.expected)
    }
}

/// Builds the witness of every defining inequality and checks that it is
/// feasible, tight on its own inequality and strict on all others.
pub fn btp_facet_audit(n: usize) -> Result<FacetAudit> {
    if n < 2 {
        return Err(Error::Shape("the facet audit needs n >= 2".into()));
    }
    let facets: Vec<Facet> =
        inequality_slacks(&TriangularArray::filled(n, int(0))).into_iter().map(|(f, _)| f).collect();
    let checks: Vec<FacetCheck> = facets
        .iter()
        .map(|&facet| {
            let slacks = inequality_slacks(&facet_witness(n, facet));
            let feasible = slacks.iter().all(|(_, s)| !s.is_negative());
            let tight: Vec<Facet> = slacks.iter().filter(|(_, s)| s.is_zero()).map(|(f, _)| *f).collect();
            let certified = feasible && tight == [facet];
            FacetCheck { facet, tight, certified }
        })
        .collect();
    Ok(FacetAudit {
        n,
        inequalities: facets.len(),
        certified: checks.iter().filter(|c| c.certified).count(),
        expected: (n - 1) * (3 * n - 2) / 2,
        checks,
    })
}

/// The order-6 point of the worked splitting example, entries in tenths.
pub fn worked_example_point() -> RationalTrianglePoint {
    let tenths: [&[i64]; 5] = [&[5], &[8, 0], &[1, 2, 10], &[10, 9, 10, 5], &[1, 1, 1, 1, 10]];
    let rows = tenths.iter().map(|r| r.iter().map(|&v| ratio(v, 10)).collect()).collect();
    TriangularArray::from_rows(rows).expect("well-formed rows")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::boolean_triangles;
    use crate::point::triangle_point;

    fn tenths(rows: [&[i64]; 5]) -> RationalTrianglePoint {
        TriangularArray::from_rows(rows.iter().map(|r| r.iter().map(|&v| ratio(v, 10)).collect()).collect()).unwrap()
    }

    #[test]
    fn worked_example_split() {
        let p = worked_example_point();
        assert!(btp_contains(&p).is_valid());
        let step = split_step(&p).unwrap().unwrap();
        assert_eq!(step.k_plus, ratio(1, 5));
        assert_eq!(step.k_minus, ratio(1, 10));
        assert_eq!(step.upper_weight(), ratio(1, 3));
        assert_eq!(step.lower_weight(), ratio(2, 3));
        assert_eq!(step.upper, tenths([&[7], &[10, 0], &[3, 0, 10], &[10, 7, 10, 3], &[3, 3, 3, 3, 10]]));
        assert_eq!(step.lower, tenths([&[4], &[7, 0], &[0, 3, 10], &[10, 10, 10, 6], &[0, 0, 0, 0, 10]]));
    }

    #[test]
    fn vertices_decompose_to_themselves() {
        for b in boolean_triangles(4).unwrap() {
            let d = btp_decompose(&triangle_point(&b)).unwrap();
            assert_eq!(d.len(), 1);
            assert_eq!(d.terms()[0].vertex, b);
        }
    }

    #[test]
    fn worked_example_decomposes() {
        let p = worked_example_point();
        let d = btp_decompose(&p).unwrap();
        assert!(d.reproduces(p.entries()));
    }

    #[test]
    fn rejects_non_members() {
        let p = TriangularArray::from_rows(vec![vec![int(1)], vec![int(1), int(1)], vec![int(1), int(0), int(1)]]).unwrap();
        let r = btp_contains(&p);
        assert_eq!(r.first(), Some(&crate::validate::Violation::new(crate::validate::Constraint::Diagonal, &[3, 1])));
        assert!(matches!(btp_decompose(&p), Err(Error::Precondition { .. })));
    }

    #[test]
    fn facet_counts() {
        for (n, f) in [(2, 2), (3, 7), (4, 15), (5, 26), (6, 40)] {
            let audit = btp_facet_audit(n).unwrap();
            assert!(audit.passed(), "{audit} {:?}", audit.checks.iter().filter(|c| !c.certified).collect::<Vec<_>>());
            assert_eq!(audit.certified, f);
        }
    }

    #[test]
    fn printed_zero_witness() {
        let w = facet_witness(6, Facet::Lower(3, 4));
        let h = ratio(1, 2);
        assert_eq!(w.row(3), &[h.clone(), int(0), ratio(1, 4)]);
        assert!(w.row(4).iter().all(|v| *v == h));
    }
}
