//! Convex-hull membership against an explicit vertex list, convex
//! decompositions, and affine dimension.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{self, LpOutcome, StandardForm};
use crate::point::{combine, Coordinates};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Term<V> {
    pub weight: Rational,
    pub vertex: V,
}

/// A point written as a convex combination of distinct vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexDecomposition<V> {
    terms: Vec<Term<V>>,
}

impl<V: Ord + Clone> ConvexDecomposition<V> {
    pub fn single(vertex: V) -> Self {
        ConvexDecomposition { terms: vec![Term { weight: int(1), vertex }] }
    }

    /// Merges repeated vertices by adding weights, drops zero weights and
    /// sorts terms by vertex.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, V)>) -> Self {
        let mut merged: BTreeMap<V, Rational> = BTreeMap::new();
        for (w, v) in terms {
            *merged.entry(v).or_insert_with(Rational::zero) += w;
        }
        let terms = merged.into_iter().filter(|(_, w)| !w.is_zero()).map(|(vertex, weight)| Term { weight, vertex });
        ConvexDecomposition { terms: terms.collect() }
    }
}

impl<V> ConvexDecomposition<V> {
    pub fn terms(&self) -> &[Term<V>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<V>> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_weight(&self) -> Rational {
        self.terms.iter().map(|t| &t.weight).sum()
    }
}

impl<V: Coordinates + PartialEq> ConvexDecomposition<V> {
    /// The weighted sum of the vertices in flat coordinates.
    pub fn point(&self, dim: usize) -> Vec<Rational> {
        combine(dim, self.terms.iter().map(|t| (&t.weight, t.vertex.coordinates())))
    }

    /// Positive weights summing to one, pairwise distinct vertices, and an
    /// exact reproduction of `point`.
    pub fn reproduces(&self, point: &[Rational]) -> bool {
        let distinct = self.terms.iter().enumerate().all(|(k, t)| self.terms[..k].iter().all(|s| s.vertex != t.vertex));
        distinct
            && !self.terms.is_empty()
            && self.terms.iter().all(|t| t.weight.is_positive())
            && self.total_weight().is_one()
            && self.point(point.len()) == point
    }
}

/// An affine functional `w·x + offset` that is `<= 0` on every vertex and
/// `> 0` on the separated point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingFunctional {
    pub weights: Vec<Rational>,
    pub offset: Rational,
}

impl SeparatingFunctional {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<Rational>() + &self.offset
    }

    pub fn eval_integer(&self, x: &[i64]) -> Rational {
        self.weights.iter().zip(x).filter(|(_, &v)| v != 0).map(|(w, &v)| w * int(v)).sum::<Rational>() + &self.offset
    }

    /// Re-checks the certificate from scratch.
    pub fn separates<V: Coordinates>(&self, point: &[Rational], vertices: &[V]) -> bool {
        self.eval(point).is_positive() && vertices.iter().all(|v| !self.eval_integer(&v.coordinates()).is_positive())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership<V> {
    Inside(ConvexDecomposition<V>),
    NotInHull(SeparatingFunctional),
}

impl<V> Membership<V> {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

/// Decides whether `point` lies in the convex hull of `vertices` by exact
/// linear programming. Vertices must be pairwise distinct.
pub fn lp_membership<V: Coordinates + Clone + Ord>(point: &[Rational], vertices: &[V]) -> Result<Membership<V>> {
    let dim = point.len();
    let mut columns = Vec::with_capacity(vertices.len());
    for v in vertices {
        let mut c = v.coordinates();
        if c.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: c.len() });
        }
        c.push(1);
        columns.push(c);
    }
    let mut rhs = point.to_vec();
    rhs.push(int(1));
    let problem = StandardForm::new(columns, rhs, Vec::new());
    match lp::solve(&problem) {
        LpOutcome::Optimal { x, .. } => {
            let terms = x.into_iter().zip(vertices).filter(|(w, _)| w.is_positive()).map(|(w, v)| (w, v.clone()));
            Ok(Membership::Inside(ConvexDecomposition::from_terms(terms)))
        }
        LpOutcome::Infeasible { mut farkas } => {
            let offset = farkas.pop().expect("the convexity row is always present");
            Ok(Membership::NotInHull(SeparatingFunctional { weights: farkas, offset }))
        }
        LpOutcome::Unbounded => Err(Error::Internal("a feasibility problem reported unboundedness".into())),
    }
}

/// Dimension of the affine hull of the points; `None` for an empty list.
pub fn affine_dimension(points: &[Vec<Rational>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs = rest.iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    Some(linalg::rank(diffs))
}

/// [`affine_dimension`] for integer vertices.
pub fn vertex_dimension<V: Coordinates>(vertices: &[V]) -> Option<usize> {
    let points: Vec<Vec<Rational>> =
        vertices.iter().map(|v| v.coordinates().into_iter().map(int).collect()).collect();
    affine_dimension(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn square_membership() {
        let square: Vec<Vec<i64>> = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let p = vec![ratio(1, 2), ratio(1, 3)];
        match lp_membership(&p, &square).unwrap() {
            Membership::Inside(d) => assert!(d.reproduces(&p)),
            other => panic!("{other:?}"),
        }
        let q = vec![ratio(3, 2), int(0)];
        match lp_membership(&q, &square).unwrap() {
            Membership::NotInHull(f) => assert!(f.separates(&q, &square)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(lp_membership(&[int(0)], &square), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn merging_terms() {
        let d = ConvexDecomposition::from_terms([(ratio(1, 4), 2u8), (ratio(1, 4), 1), (ratio(1, 2), 2), (int(0), 3)]);
        assert_eq!(d.len(), 2);
        assert_eq!(d.terms()[0], Term { weight: ratio(1, 4), vertex: 1 });
        assert_eq!(d.terms()[1], Term { weight: ratio(3, 4), vertex: 2 });
    }

    #[test]
    fn dimensions() {
        let pts = vec![vec![int(0), int(0)], vec![int(1), int(1)], vec![int(2), int(2)]];
        assert_eq!(affine_dimension(&pts), Some(1));
        assert_eq!(affine_dimension(&pts[..1]), Some(0));
        assert_eq!(affine_dimension(&[]), None);
    }
}
