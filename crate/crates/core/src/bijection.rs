//! The map from square sign matrices to triangles through column partial sums,
//! and its inverse on magog triangles.

use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::triangle::MagogTriangle;
use crate::validate::{validate_magog, validate_square_sign};

/// Column partial sum matrix: entry `(i, j)` is the sum of column `j` through row `i`.
pub fn column_partial_sums(m: &SignMatrix) -> Result<SignMatrix> {
    let report = validate_square_sign(m);
    if !report.is_valid() {
        return Err(Error::Precondition { what: "square sign matrix", report });
    }
    Ok(partial_sums_unchecked(m))
}

fn partial_sums_unchecked(m: &SignMatrix) -> SignMatrix {
    let n = m.order();
    let mut out = m.entries().to_vec();
    for i in 1..n {
        for j in 0..n {
            out[i * n + j] += out[(i - 1) * n + j];
        }
    }
    SignMatrix::from_raw(n, out)
}

/// Rows of the triangle read off a square sign matrix: row `i` lists the
/// columns whose partial sum through row `i` is one. Defined for every square
/// sign matrix; the result is a magog triangle only for magog matrices.
pub fn raw_triangle(m: &SignMatrix) -> Result<Vec<Vec<usize>>> {
    let p = column_partial_sums(m)?;
    Ok(p.rows()
        .map(|row| row.iter().enumerate().filter(|(_, &v)| v == 1).map(|(j, _)| j + 1).collect())
        .collect())
}

pub fn matrix_to_magog_triangle(m: &SignMatrix) -> Result<MagogTriangle> {
    let report = validate_magog(m);
    if !report.is_valid() {
        return Err(Error::Precondition { what: "magog matrix", report });
    }
    let n = m.order();
    let p = partial_sums_unchecked(m);
    let mut entries = Vec::with_capacity(n * (n + 1) / 2);
    for row in p.rows() {
        entries.extend(row.iter().enumerate().filter(|(_, &v)| v == 1).map(|(j, _)| (j + 1) as u8));
    }
    Ok(MagogTriangle::from_raw(n, entries))
}

pub fn magog_triangle_to_matrix(t: &MagogTriangle) -> SignMatrix {
    triangle_rows_to_matrix(t.order(), t.rows())
}

/// Inverse of the partial-sum reading for any chain of row sets of sizes
/// `1, 2, ..., n`.
pub(crate) fn triangle_rows_to_matrix<'a>(n: usize, rows: impl Iterator<Item = &'a [u8]>) -> SignMatrix {
    let mut entries = vec![0i8; n * n];
    let mut prev = vec![0i8; n];
    for (i, row) in rows.enumerate() {
        let mut cur = vec![0i8; n];
        for &c in row {
            cur[c as usize - 1] = 1;
        }
        for j in 0..n {
            entries[i * n + j] = cur[j] - prev[j];
        }
        prev = cur;
    }
    SignMatrix::from_raw(n, entries)
}
