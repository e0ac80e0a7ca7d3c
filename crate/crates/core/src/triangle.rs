//! Triangular arrays: magog triangles and the `n - 1` row arrays that carry
//! boolean triangles and rational points of the boolean triangle polytope.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::validate::{check, Collector, Constraint, Mode, ValidationReport};

/// A magog triangle of order `n`: row `i` (1-based) holds `i` strictly
/// increasing entries in `1..=n`, `t[i+1][k+1] <= t[i][k] + 1`, and the last
/// row is `1, 2, ..., n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagogTriangle {
    n: usize,
    entries: Vec<u8>,
}

#[inline]
pub(crate) fn row_start(row: usize) -> usize {
    row * (row + 1) / 2
}

impl MagogTriangle {
    /// Builds a triangle from its rows, rejecting anything that is not a
    /// magog triangle.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let entries = flatten_rows(rows)?;
        let n = rows.len();
        let report = validate_magog_triangle_rows(n, &entries, Mode::FirstFailure);
        if !report.is_valid() {
            return Err(Error::Precondition { what: "magog triangle", report });
        }
        Ok(MagogTriangle { n, entries: entries.into_iter().map(|v| v as u8).collect() })
    }

    pub(crate) fn from_raw(n: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), row_start(n));
        MagogTriangle { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Row `row` (0-based), which has `row + 1` entries.
    pub fn row(&self, row: usize) -> &[u8] {
        &self.entries[row_start(row)..row_start(row + 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        (0..self.n).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
    }

    pub fn top(&self) -> u8 {
        self.entries[0]
    }
}

impl fmt::Debug for MagogTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

fn flatten_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Vec<i64>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Shape("a triangle needs at least one row".into()));
    }
    if n > u8::MAX as usize {
        return Err(Error::Shape(format!("order {n} is too large for a magog triangle")));
    }
    let mut entries = Vec::with_capacity(row_start(n));
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != i + 1 {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                i + 1
            )));
        }
        entries.extend_from_slice(row);
    }
    Ok(entries)
}

/// Checks the magog triangle conditions on arbitrary integer rows.
/// Violation indices are `(row, position)`, 1-based.
pub fn validate_magog_triangle<R: AsRef<[i64]>>(rows: &[R], mode: Mode) -> Result<ValidationReport> {
    let entries = flatten_rows(rows)?;
    Ok(validate_magog_triangle_rows(rows.len(), &entries, mode))
}

fn validate_magog_triangle_rows(n: usize, entries: &[i64], mode: Mode) -> ValidationReport {
    let mut c = Collector::new(mode);
    let at = |i: usize, k: usize| entries[row_start(i - 1) + k - 1];
    for i in 1..=n {
        for k in 1..=i {
            let v = at(i, k);
            check!(c, (1..=n as i64).contains(&v), Constraint::TriangleBound, i, k);
        }
    }
    for i in 1..=n {
        for k in 1..i {
            check!(c, at(i, k) < at(i, k + 1), Constraint::RowIncrease, i, k);
        }
    }
    for i in 1..n {
        for k in 1..=i {
            check!(c, at(i + 1, k + 1) <= at(i, k) + 1, Constraint::DiagonalPlusOne, i, k);
        }
    }
    for k in 1..=n {
        check!(c, at(n, k) == k as i64, Constraint::BottomRow, n, k);
    }
    c.finish()
}

/// A triangular array with `n - 1` rows; row `i` (1-based) holds the entries
/// of columns `n - i ..= n - 1`. Entry `(i, c)` sits on the diagonal `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangularArray<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T> TriangularArray<T> {
    /// Number of entries of an array of order `n`, that is `n choose 2`.
    pub fn len_for(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn from_flat(n: usize, entries: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("order must be at least 1".into()));
        }
        let expected = Self::len_for(n);
        if entries.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: entries.len() });
        }
        Ok(TriangularArray { n, entries })
    }

    /// Builds from rows listed top to bottom; row `i` must have `i` entries.
    /// An empty list gives the order 1 array.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len() + 1;
        let mut entries = Vec::with_capacity(Self::len_for(n));
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    i + 1
                )));
            }
            entries.extend(row);
        }
        Ok(TriangularArray { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    /// Flat position of entry `(i, c)` with `1 <= i <= n - 1` and `n - i <= c <= n - 1`.
    #[inline]
    pub fn index(&self, i: usize, c: usize) -> usize {
        debug_assert!(i >= 1 && i < self.n && c + i >= self.n && c < self.n);
        row_start(i - 1) + (c + i - self.n)
    }

    #[inline]
    pub fn get(&self, i: usize, c: usize) -> &T {
        &self.entries[self.index(i, c)]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, c: usize) -> &mut T {
        let idx = self.index(i, c);
        &mut self.entries[idx]
    }

    /// Row `i` (1-based), left to right by increasing column.
    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[row_start(i - 1)..row_start(i)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (1..self.n).map(move |i| self.row(i))
    }

    /// All `(i, c)` positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (1..n).flat_map(move |i| (n - i..n).map(move |c| (i, c)))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> TriangularArray<U> {
        TriangularArray { n: self.n, entries: self.entries.iter().map(f).collect() }
    }
}

impl<T: Clone> TriangularArray<T> {
    pub fn filled(n: usize, value: T) -> Self {
        TriangularArray { n, entries: vec![value; Self::len_for(n)] }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(|r| r.to_vec()).collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for TriangularArray<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// The diagonal inequalities as `(i, j)` pairs with `1 <= j < i <= n - 1`,
/// ordered by `j` then `i`.
pub fn diagonal_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n.saturating_sub(1)).flat_map(move |j| (j + 1..n).map(move |i| (i, j)))
}

/// Slack of every diagonal inequality: `1 + S_{c-1}(i) - S_c(i)` where
/// `c = n - j` and `S_c(i)` is the sum of column `c` from its top through row `i`.
/// Entries are listed in the order of [`diagonal_pairs`].
pub fn diagonal_slacks<T>(a: &TriangularArray<T>) -> Vec<((usize, usize), T)>
where
    T: Clone + Zero + One + std::ops::Sub<Output = T>,
{
    let n = a.order();
    let mut out = Vec::new();
    for j in 1..n.saturating_sub(1) {
        let c = n - j;
        let mut upper = a.get(j, c).clone();
        let mut lower = T::zero();
        for i in j + 1..n {
            upper = upper + a.get(i, c).clone();
            lower = lower + a.get(i, c - 1).clone();
            out.push(((i, j), T::one() + lower.clone() - upper.clone()));
        }
    }
    out
}

/// Checks entry bounds `0 <= x <= 1` and the diagonal inequalities.
/// Bound violations carry `(i, c)`, diagonal violations carry `(i, j)`.
pub(crate) fn check_unit_triangle<T>(a: &TriangularArray<T>, mode: Mode) -> ValidationReport
where
    T: Clone + Zero + One + PartialOrd + std::ops::Sub<Output = T>,
{
    let mut c = Collector::new(mode);
    let zero = T::zero();
    let one = T::one();
    for (i, col) in a.positions() {
        let v = a.get(i, col);
        check!(c, *v >= zero, Constraint::EntryLower, i, col);
        check!(c, *v <= one, Constraint::EntryUpper, i, col);
    }
    for ((i, j), slack) in diagonal_slacks(a) {
        check!(c, slack >= zero, Constraint::Diagonal, i, j);
    }
    c.finish()
}

/// A boolean triangle of order `n`: a `{0, 1}` triangular array satisfying
/// every diagonal inequality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanTriangle {
    array: TriangularArray<u8>,
}

impl BooleanTriangle {
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let array = bits_from_rows(rows)?;
        let report = validate_bits(&array, Mode::FirstFailure);
        if !report.is_valid() {
            return Err(Error::Precondition { what: "boolean triangle", report });
        }
        Ok(BooleanTriangle { array })
    }

    pub(crate) fn from_array_unchecked(array: TriangularArray<u8>) -> Self {
        debug_assert!(validate_bits(&array, Mode::FirstFailure).is_valid());
        BooleanTriangle { array }
    }

    pub fn zero(n: usize) -> Self {
        BooleanTriangle { array: TriangularArray::filled(n, 0) }
    }

    pub fn order(&self) -> usize {
        self.array.order()
    }

    pub fn array(&self) -> &TriangularArray<u8> {
        &self.array
    }

    /// Entry on row `i`, column `c` (both 1-based, `n - i <= c <= n - 1`).
    pub fn get(&self, i: usize, c: usize) -> u8 {
        *self.array.get(i, c)
    }

    pub fn ones(&self) -> usize {
        self.array.entries().iter().filter(|&&v| v == 1).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.array.rows().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
    }
}

impl fmt::Debug for BooleanTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.array.fmt(f)
    }
}

fn bits_from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<TriangularArray<u8>> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(row.as_ref().len());
        for (k, &v) in row.as_ref().iter().enumerate() {
            if !(0..=1).contains(&v) {
                return Err(Error::EntryRange { row: i + 1, col: k + 1, value: v });
            }
            r.push(v as u8);
        }
        out.push(r);
    }
    TriangularArray::from_rows(out)
}

fn validate_bits(a: &TriangularArray<u8>, mode: Mode) -> ValidationReport {
    check_unit_triangle(&a.map(|&v| v as i32), mode)
}

/// Validates `{0, 1}` rows against the diagonal inequalities.
pub fn validate_boolean_triangle<R: AsRef<[i64]>>(rows: &[R], mode: Mode) -> Result<ValidationReport> {
    Ok(validate_bits(&bits_from_rows(rows)?, mode))
}
