//! Rational points shaped like matrices or like boolean triangles, and the
//! flat coordinate view shared by every polytope routine.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::rational::{format_rational, int, Rational};
use crate::triangle::{BooleanTriangle, TriangularArray};

pub type RationalTrianglePoint = TriangularArray<Rational>;

/// Objects with integer coordinates in a fixed ambient space.
pub trait Coordinates {
    fn coordinates(&self) -> Vec<i64>;
}

impl Coordinates for SignMatrix {
    fn coordinates(&self) -> Vec<i64> {
        self.entries().iter().map(|&v| v as i64).collect()
    }
}

impl Coordinates for BooleanTriangle {
    fn coordinates(&self) -> Vec<i64> {
        self.array().entries().iter().map(|&v| v as i64).collect()
    }
}

impl Coordinates for Vec<i64> {
    fn coordinates(&self) -> Vec<i64> {
        self.clone()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrixPoint {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrixPoint {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("a matrix point needs at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {} has {} entries, expected {}", i + 1, row.len(), n)));
            }
            entries.extend(row);
        }
        Ok(RationalMatrixPoint { n, entries })
    }

    pub fn from_flat(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n || n == 0 {
            return Err(Error::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        Ok(RationalMatrixPoint { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl From<&SignMatrix> for RationalMatrixPoint {
    fn from(m: &SignMatrix) -> Self {
        RationalMatrixPoint { n: m.order(), entries: m.entries().iter().map(|&v| int(v as i64)).collect() }
    }
}

impl fmt::Debug for RationalMatrixPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.entries.chunks(self.n).map(|r| r.iter().map(format_rational).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

pub fn triangle_point(b: &BooleanTriangle) -> RationalTrianglePoint {
    b.array().map(|&v| int(v as i64))
}

/// Weighted sum `sum w_k v_k` of integer vectors.
pub fn combine<'a>(dim: usize, terms: impl IntoIterator<Item = (&'a Rational, Vec<i64>)>) -> Vec<Rational> {
    let mut out = vec![int(0); dim];
    for (w, v) in terms {
        for (o, x) in out.iter_mut().zip(v) {
            if x != 0 {
                *o += w * int(x);
            }
        }
    }
    out
}
