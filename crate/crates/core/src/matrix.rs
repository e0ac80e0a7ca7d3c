//! Square `{-1, 0, 1}` matrices and permutations.
//!
//! A [`SignMatrix`] is only a container: it guarantees the entry alphabet and
//! nothing else. Row/column sum conditions are the business of the validators
//! in [`crate::validate`].
//!
//! Indices are 0-based in the API. Validation reports use 1-based `(i, j)`
//! pairs so that they line up with the usual names of the inequalities.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    /// Builds a matrix from its rows, checking squareness and the entry alphabet.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("a sign matrix needs at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(Error::EntryRange { row: i + 1, col: j + 1, value: v });
                }
                entries.push(v as i8);
            }
        }
        Ok(SignMatrix { n, entries })
    }

    /// Row-major entries; the caller guarantees they are in `{-1, 0, 1}`.
    pub(crate) fn from_raw(n: usize, entries: Vec<i8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|v| (-1..=1).contains(v)));
        SignMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        SignMatrix { n, entries }
    }

    /// Ones on the main antidiagonal.
    pub fn antidiagonal(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + (n - 1 - i)] = 1;
        }
        SignMatrix { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(|r| r.iter().map(|&v| v as i64).collect()).collect()
    }

    pub fn negative_ones(&self) -> usize {
        self.entries.iter().filter(|&&v| v == -1).count()
    }

    /// True when every entry is 0 or 1 and each row and column holds one 1.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let n = self.n;
        let mut values = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for row in self.rows() {
            let mut pos = None;
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 if pos.is_none() => pos = Some(j),
                    _ => return None,
                }
            }
            let j = pos?;
            if seen[j] {
                return None;
            }
            seen[j] = true;
            values.push(j + 1);
        }
        Some(Permutation { values })
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation in one-line notation, values `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Shape("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Parse(format!("{values:?} is not a permutation of 1..={n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Permutation matrix with `M[i][j] = 1` iff `π_i = j`.
    pub fn matrix(&self) -> SignMatrix {
        let n = self.values.len();
        let mut entries = vec![0; n * n];
        for (i, &v) in self.values.iter().enumerate() {
            entries[i * n + v - 1] = 1;
        }
        SignMatrix { n, entries }
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { values: current.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// True iff there are no `i < j < k` with `π_i < π_k < π_j`.
pub fn is_132_avoiding(p: &Permutation) -> bool {
    let v = p.values();
    // For each middle position j, look for a smaller value before it and a
    // value strictly between the two after it.
    for j in 1..v.len() {
        let Some(low) = v[..j].iter().copied().filter(|&a| a < v[j]).min() else {
            continue;
        };
        if v[j + 1..].iter().any(|&c| low < c && c < v[j]) {
            return false;
        }
    }
    true
}
