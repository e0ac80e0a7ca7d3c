//! Per-matrix statistics: negative ones, inversions and boundary positions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::matrix::SignMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InversionStats {
    pub inv: i64,
    pub posinv: i64,
    pub neg_count: i64,
}

/// `inv = sum over k < i, j < l of a_ij * a_kl`, with `posinv = inv - neg_count`.
pub fn inversion_stats(m: &SignMatrix) -> InversionStats {
    let n = m.order();
    // below[k][l] = sum of a_ij over i > k, j < l
    let w = n + 1;
    let mut below = vec![0i64; w * w];
    for k in (0..n).rev() {
        for l in 1..=n {
            below[k * w + l] = below[(k + 1) * w + l] + below[k * w + l - 1] - below[(k + 1) * w + l - 1]
                + if k + 1 < n { m.get(k + 1, l - 1) as i64 } else { 0 };
        }
    }
    let mut inv = 0i64;
    for k in 0..n {
        for l in 0..n {
            let a = m.get(k, l) as i64;
            if a != 0 {
                inv += a * below[k * w + l];
            }
        }
    }
    let neg_count = m.negative_ones() as i64;
    InversionStats { inv, posinv: inv - neg_count, neg_count }
}

/// `inv_{k,l} = a_kl * sum over i > k, j < l of a_ij`, with 1-based `k`, `l`.
pub fn inversion_profile(m: &SignMatrix, k: usize, l: usize) -> i64 {
    let n = m.order();
    assert!((1..=n).contains(&k) && (1..=n).contains(&l), "({k}, {l}) is outside a {n}x{n} matrix");
    let a = m.get(k - 1, l - 1) as i64;
    if a == 0 {
        return 0;
    }
    let mut s = 0i64;
    for i in k..n {
        for j in 0..l - 1 {
            s += m.get(i, j) as i64;
        }
    }
    a * s
}

/// The half-turn symmetric sign matrix with `floor((n-1)/2) * ceil((n-1)/2)`
/// negative ones: row `i <= h = floor((n+1)/2)` has `h - i` zeros at each end
/// of an odd-width core alternating `1, -1, ..., 1`; for even `n` a zero is
/// appended to those rows. The remaining rows are the half-turn images.
pub fn max_negative_ones_matrix(n: usize) -> SignMatrix {
    assert!(n >= 1, "order must be positive");
    let h = n.div_ceil(2);
    let odd = 2 * h - 1;
    let mut entries = vec![0i8; n * n];
    for i in 1..=h {
        let pad = h - i;
        for (c, j) in (pad..odd - pad).enumerate() {
            entries[(i - 1) * n + j] = if c % 2 == 0 { 1 } else { -1 };
        }
    }
    for i in h + 1..=n {
        let src = n + 1 - i;
        for j in 0..n {
            entries[(i - 1) * n + j] = entries[(src - 1) * n + (n - 1 - j)];
        }
    }
    SignMatrix::from_raw(n, entries)
}

/// `floor((n-1)/2) * ceil((n-1)/2)`.
pub fn max_negative_ones(n: usize) -> usize {
    let m = n.saturating_sub(1);
    (m / 2) * m.div_ceil(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    NegOnes,
    Inv,
    Posinv,
    /// Column of the one in the first row.
    FirstRowOne,
    /// Row of the one in the first column.
    FirstColOne,
    /// Column of the one in the last row.
    LastRowOne,
}

impl Statistic {
    pub const ALL: [Statistic; 6] = [
        Statistic::NegOnes,
        Statistic::Inv,
        Statistic::Posinv,
        Statistic::FirstRowOne,
        Statistic::FirstColOne,
        Statistic::LastRowOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::NegOnes => "neg-ones",
            Statistic::Inv => "inv",
            Statistic::Posinv => "posinv",
            Statistic::FirstRowOne => "first-row-one",
            Statistic::FirstColOne => "first-col-one",
            Statistic::LastRowOne => "last-row-one",
        }
    }

    /// Smallest value the statistic can take, used as the first table index.
    pub fn minimum(self) -> i64 {
        match self {
            Statistic::NegOnes | Statistic::Inv | Statistic::Posinv => 0,
            _ => 1,
        }
    }

    /// Evaluates the statistic; positional statistics are 1-based.
    pub fn eval(self, m: &SignMatrix) -> i64 {
        let n = m.order();
        match self {
            Statistic::NegOnes => m.negative_ones() as i64,
            Statistic::Inv => inversion_stats(m).inv,
            Statistic::Posinv => inversion_stats(m).posinv,
            Statistic::FirstRowOne => one_in(m.row(0).iter().copied()),
            Statistic::FirstColOne => one_in((0..n).map(|i| m.get(i, 0))),
            Statistic::LastRowOne => one_in(m.row(n - 1).iter().copied()),
        }
    }
}

fn one_in(mut it: impl Iterator<Item = i8>) -> i64 {
    it.position(|v| v == 1).map_or(0, |p| p as i64 + 1)
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s || st.name().replace('-', "_") == s)
            .ok_or_else(|| Error::Parse(format!("unknown statistic {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SignMatrix {
        SignMatrix::from_rows(rows).unwrap()
    }

    // Oracle: the defining quadruple sum, evaluated literally.
    fn inv_by_definition(a: &SignMatrix) -> i64 {
        let n = a.order();
        let mut s = 0;
        for k in 0..n {
            for i in k + 1..n {
                for j in 0..n {
                    for l in j + 1..n {
                        s += a.get(i, j) as i64 * a.get(k, l) as i64;
                    }
                }
            }
        }
        s
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversion_stats(&SignMatrix::identity(3)), InversionStats { inv: 0, posinv: 0, neg_count: 0 });
        assert_eq!(inversion_stats(&SignMatrix::antidiagonal(3)), InversionStats { inv: 3, posinv: 3, neg_count: 0 });
        let a = m(&[&[0, 1, 0], &[1, -1, 1], &[0, 1, 0]]);
        assert_eq!(inversion_stats(&a), InversionStats { inv: 2, posinv: 1, neg_count: 1 });
        assert_eq!(inversion_profile(&SignMatrix::antidiagonal(3), 1, 3), 2);
        assert_eq!(inversion_profile(&SignMatrix::identity(4), 2, 3), 0);
        for a in [a, SignMatrix::antidiagonal(5), max_negative_ones_matrix(6)] {
            assert_eq!(inversion_stats(&a).inv, inv_by_definition(&a));
            let n = a.order();
            let total: i64 = (1..=n).flat_map(|k| (1..=n).map(move |l| (k, l))).map(|(k, l)| inversion_profile(&a, k, l)).sum();
            assert_eq!(total, inv_by_definition(&a));
        }
    }

    #[test]
    fn max_negative_ones_construction() {
        let m5 = m(&[
            &[0, 0, 1, 0, 0],
            &[0, 1, -1, 1, 0],
            &[1, -1, 1, -1, 1],
            &[0, 1, -1, 1, 0],
            &[0, 0, 1, 0, 0],
        ]);
        assert_eq!(max_negative_ones_matrix(5), m5);
        let m6 = m(&[
            &[0, 0, 1, 0, 0, 0],
            &[0, 1, -1, 1, 0, 0],
            &[1, -1, 1, -1, 1, 0],
            &[0, 1, -1, 1, -1, 1],
            &[0, 0, 1, -1, 1, 0],
            &[0, 0, 0, 1, 0, 0],
        ]);
        assert_eq!(max_negative_ones_matrix(6), m6);
        assert_eq!(max_negative_ones_matrix(1).to_rows(), vec![vec![1]]);
        for n in 1..10 {
            assert_eq!(max_negative_ones_matrix(n).negative_ones(), max_negative_ones(n));
        }
    }

    #[test]
    fn positional_statistics() {
        let a = m(&[&[0, 0, 0, 1], &[0, 1, 1, -1], &[1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(Statistic::FirstRowOne.eval(&a), 4);
        assert_eq!(Statistic::FirstColOne.eval(&a), 3);
        assert_eq!(Statistic::LastRowOne.eval(&a), 4);
        assert_eq!(Statistic::NegOnes.eval(&a), 1);
        assert_eq!("first-col-one".parse::<Statistic>().unwrap(), Statistic::FirstColOne);
        assert_eq!("neg_ones".parse::<Statistic>().unwrap(), Statistic::NegOnes);
        assert!("bogus".parse::<Statistic>().is_err());
    }
}
