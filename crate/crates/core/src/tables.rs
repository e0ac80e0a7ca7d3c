//! Distribution tables, refined boundary counts and closed-form counts.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::enumerate::{par_fold_matrices, ObjectKind};
use crate::error::{Error, Result};
use crate::stats::Statistic;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionTable {
    pub n: usize,
    pub kind: ObjectKind,
    pub statistic: Statistic,
    /// Statistic value of `counts[0]`.
    pub min: i64,
    pub counts: Vec<u64>,
}

impl DistributionTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(value, count)` pairs in increasing value order.
    pub fn labelled(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().enumerate().map(|(k, &c)| (self.min + k as i64, c))
    }

    pub fn get(&self, value: i64) -> u64 {
        usize::try_from(value - self.min).ok().and_then(|k| self.counts.get(k)).copied().unwrap_or(0)
    }

    /// One `value,count` line per entry, no trailing newline.
    pub fn to_csv(&self) -> String {
        self.labelled().map(|(v, c)| format!("{v},{c}")).collect::<Vec<_>>().join("\n")
    }
}

/// Counts objects of `kind` by statistic value. Positional statistics span
/// `1..=n`; the others run from zero to the largest value attained.
pub fn distribution(kind: ObjectKind, statistic: Statistic, n: usize) -> Result<DistributionTable> {
    if kind == ObjectKind::BooleanTriangle {
        return Err(Error::Shape("statistics are defined on matrices".into()));
    }
    let hist = par_fold_matrices(
        kind,
        n,
        Vec::<u64>::new,
        |mut acc, m| {
            let v = statistic.eval(m) as usize;
            if acc.len() <= v {
                acc.resize(v + 1, 0);
            }
            acc[v] += 1;
            acc
        },
        |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )?;
    let min = statistic.minimum();
    let mut counts: Vec<u64> = hist.into_iter().skip(min as usize).collect();
    if min == 1 {
        counts.resize(n, 0);
    }
    Ok(DistributionTable { n, kind, statistic, min, counts })
}

/// Number of magog matrices of order `n` with a one at row `i`, column `j` (1-based).
pub fn boundary_count(n: usize, i: usize, j: usize) -> Result<u64> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Shape(format!("({i}, {j}) is outside a {n}x{n} matrix")));
    }
    par_fold_matrices(
        ObjectKind::MagogMatrix,
        n,
        || 0u64,
        |acc, m| acc + u64::from(m.get(i - 1, j - 1) == 1),
        |a, b| a + b,
    )
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, x| acc * x)
}

/// `prod_{j=0}^{n-1} (3j+1)! / (n+j)!`, the number of ASMs of order `n`.
pub fn product_formula(n: usize) -> BigUint {
    let n = n as u64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 0..n {
        num *= factorial(3 * j + 1);
        den *= factorial(n + j);
    }
    num / den
}

pub fn product_formula_u64(n: usize) -> Option<u64> {
    product_formula(n).to_u64()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}
