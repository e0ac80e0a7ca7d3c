//! Lattice points in dilates and Ehrhart polynomial interpolation.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{install, magog_matrices, CEILING_ENV};
use crate::error::{Error, Result};
use crate::hull::lp_membership;
use crate::rational::{format_rational, int, Rational};
use crate::tables::binomial;

pub const BTP_ORDER_CEILING: usize = 5;
pub const BTP_DILATION_CEILING: u64 = 10;
pub const TSSCPP3_DILATION_CEILING: u64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DilatePolytope {
    /// The boolean triangle polytope of the given order.
    Btp(usize),
    /// The magog matrix polytope of order 3.
    Tsscpp3,
}

impl DilatePolytope {
    /// Dimension of the polytope, which is the degree of its Ehrhart polynomial.
    pub fn dimension(self) -> usize {
        match self {
            DilatePolytope::Btp(n) => binomial(n as u64, 2) as usize,
            DilatePolytope::Tsscpp3 => 4,
        }
    }
}

impl fmt::Display for DilatePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DilatePolytope::Btp(n) => write!(f, "btp({n})"),
            DilatePolytope::Tsscpp3 => f.write_str("tsscpp3"),
        }
    }
}

fn ceilings_lifted() -> bool {
    std::env::var(CEILING_ENV).is_ok_and(|v| !v.trim().is_empty())
}

fn guard(p: DilatePolytope, t: u64) -> Result<()> {
    if ceilings_lifted() {
        return Ok(());
    }
    let t_ceiling = match p {
        DilatePolytope::Btp(n) => {
            if n > BTP_ORDER_CEILING {
                return Err(Error::ResourceLimit { n, ceiling: BTP_ORDER_CEILING });
            }
            BTP_DILATION_CEILING
        }
        DilatePolytope::Tsscpp3 => TSSCPP3_DILATION_CEILING,
    };
    if t > t_ceiling {
        return Err(Error::DilationLimit { t, ceiling: t_ceiling });
    }
    Ok(())
}

/// Number of integer points of `t` times the polytope.
pub fn lattice_points_in_dilate(p: DilatePolytope, t: u64) -> Result<u64> {
    guard(p, t)?;
    match p {
        DilatePolytope::Btp(n) => {
            if n == 0 {
                return Err(Error::Shape("order must be at least 1".into()));
            }
            btp_dilate_count(n, t)
        }
        DilatePolytope::Tsscpp3 => Ok(tsscpp3_dilate_points(t)?.len() as u64),
    }
}

/// Slack vector `d_c = t + S_{c-1} - S_c` of the columns present after a
/// row, leftmost column first.
type State = Vec<u32>;

/// Counts integer triangles with entries in `0..=t` and every diagonal
/// inequality scaled by `t`. Rows are processed top to bottom; states that
/// agree on all slacks, capped by the largest decrease still possible,
/// are merged.
fn btp_dilate_count(n: usize, t: u64) -> Result<u64> {
    if n <= 1 {
        return Ok(1);
    }
    let t = u32::try_from(t).map_err(|_| Error::DilationLimit { t, ceiling: u32::MAX as u64 })?;
    let rows = n - 1;
    let mut states: HashMap<State, u128> = HashMap::new();
    let cap0 = t * (rows as u32 - 1);
    for b in 0..=t {
        *states.entry(vec![(t - b).min(cap0)]).or_insert(0) += 1;
    }
    for i in 1..rows {
        let cap = t * (rows - i - 1) as u32;
        let next = install(|| {
            states
                .par_iter()
                .fold(HashMap::new, |mut acc: HashMap<State, u128>, (state, &count)| {
                    let mut new = vec![0u32; state.len() + 1];
                    extend_row(t, cap, state, 0, 0, &mut new, &mut |s| *acc.entry(s.to_vec()).or_insert(0) += count);
                    acc
                })
                .reduce(HashMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_insert(0) += v;
                    }
                    a
                })
        });
        states = next;
    }
    let total: u128 = states.values().sum();
    u64::try_from(total).map_err(|_| Error::Internal("lattice point count overflows u64".into()))
}

/// Chooses the entries of the next row left to right. Position `k` of the
/// new row is column `n - i - 1 + k`; its slack comes from `state[k - 1]`.
fn extend_row(t: u32, cap: u32, state: &[u32], k: usize, left: u32, new: &mut [u32], emit: &mut dyn FnMut(&[u32])) {
    if k == new.len() {
        emit(new);
        return;
    }
    if k == 0 {
        for b in 0..=t {
            new[0] = (t - b).min(cap);
            extend_row(t, cap, state, 1, b, new, emit);
        }
        return;
    }
    let d = state[k - 1];
    for b in 0..=t.min(d + left) {
        new[k] = (d + left - b).min(cap);
        extend_row(t, cap, state, k + 1, b, new, emit);
    }
}

/// Integer `3 x 3` matrices with row and column sums `t`, column prefix
/// sums in `[0, t]` and nonnegative row prefix sums, in lexicographic order.
pub fn tsscpp3_candidates(t: u64) -> Vec<[i64; 9]> {
    let t = t as i64;
    let mut out = Vec::new();
    for a11 in 0..=t {
        for a12 in 0..=t - a11 {
            let a13 = t - a11 - a12;
            let top = [a11, a12, a13];
            for a21 in -a11..=t - a11 {
                for a22 in -a12..=t - a12 {
                    let a23 = t - a21 - a22;
                    let second = [a21, a22, a23];
                    let prefix_ok = a21 >= 0 && a21 + a22 >= 0;
                    let column_ok = (0..3).all(|j| (0..=t).contains(&(top[j] + second[j])));
                    if !prefix_ok || !column_ok {
                        continue;
                    }
                    let third = [t - a11 - a21, t - a12 - a22, t - a13 - a23];
                    let mut m = [0; 9];
                    m[..3].copy_from_slice(&top);
                    m[3..6].copy_from_slice(&second);
                    m[6..].copy_from_slice(&third);
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Lattice points of `t` times the order-3 magog matrix polytope: the
/// candidates that lie in the hull of the scaled magog matrices.
pub fn tsscpp3_dilate_points(t: u64) -> Result<Vec<[i64; 9]>> {
    if t == 0 {
        return Ok(vec![[0; 9]]);
    }
    let scale = t as i64;
    let vertices: Vec<Vec<i64>> =
        magog_matrices(3)?.map(|m| m.entries().iter().map(|&v| v as i64 * scale).collect()).collect();
    let candidates = tsscpp3_candidates(t);
    let keep: Vec<bool> = install(|| {
        candidates
            .par_iter()
            .map(|c| {
                let point: Vec<Rational> = c.iter().map(|&v| int(v)).collect();
                lp_membership(&point, &vertices).map(|m| m.is_inside())
            })
            .collect::<Result<Vec<bool>>>()
    })?;
    Ok(candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect())
}

/// A polynomial with exact rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalPolynomial {
    #[serde(serialize_with = "serialize_coefficients")]
    coefficients: Vec<Rational>,
}

fn serialize_coefficients<S: serde::Serializer>(c: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(format_rational))
}

impl RationalPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        RationalPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coefficients.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let coeff = if magnitude.is_integer() {
                if magnitude.is_one() && k > 0 {
                    String::new()
                } else {
                    magnitude.numer().to_string()
                }
            } else {
                format!("({})", magnitude)
            };
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write!(f, "{coeff}{var}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Exact Lagrange interpolation through distinct sample points.
pub fn interpolate(samples: &[(Rational, Rational)]) -> Result<RationalPolynomial> {
    if samples.is_empty() {
        return Err(Error::Interpolation("no samples".into()));
    }
    for (k, (x, _)) in samples.iter().enumerate() {
        if samples[..k].iter().any(|(y, _)| y == x) {
            return Err(Error::Interpolation(format!("repeated sample point {x}")));
        }
    }
    let m = samples.len();
    let mut result = vec![Rational::zero(); m];
    for (k, (xk, yk)) in samples.iter().enumerate() {
        // basis polynomial prod_{l != k} (t - x_l) / (x_k - x_l)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (l, (xl, _)) in samples.iter().enumerate() {
            if l == k {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= b * xl;
            }
            basis = next;
            denom *= xk - xl;
        }
        let scale = yk / denom;
        for (r, b) in result.iter_mut().zip(&basis) {
            *r += b * &scale;
        }
    }
    Ok(RationalPolynomial::new(result))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartFit {
    pub polynomial: RationalPolynomial,
    pub dimension: usize,
    /// Leading coefficient times `dimension!`.
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub normalized_volume: Rational,
}

/// Fits the Ehrhart polynomial of a polytope of the given dimension through
/// the first `dimension + 1` samples and checks every remaining sample.
pub fn ehrhart_interpolate(values: &[(u64, u64)], dimension: usize) -> Result<EhrhartFit> {
    if values.len() < dimension + 1 {
        return Err(Error::Interpolation(format!(
            "{} samples cannot determine a polynomial of degree {dimension}",
            values.len()
        )));
    }
    let as_rational = |&(t, c): &(u64, u64)| (Rational::from_integer(t.into()), Rational::from_integer(c.into()));
    let polynomial = interpolate(&values[..=dimension].iter().map(as_rational).collect::<Vec<_>>())?;
    for (t, c) in values.iter().map(as_rational) {
        if polynomial.eval(&t) != c {
            return Err(Error::Interpolation(format!("sample ({t}, {c}) disagrees with the fitted polynomial")));
        }
    }
    if polynomial.degree() != Some(dimension) {
        return Err(Error::Interpolation(format!("fitted degree {:?} differs from dimension {dimension}", polynomial.degree())));
    }
    let factorial: Rational = (1..=dimension as i64).map(int).product();
    let normalized_volume = polynomial.leading_coefficient() * factorial;
    Ok(EhrhartFit { polynomial, dimension, normalized_volume })
}

/// Counts lattice points for `t = 0..=tmax`.
pub fn dilate_counts(p: DilatePolytope, tmax: u64) -> Result<Vec<(u64, u64)>> {
    guard(p, tmax)?;
    (0..=tmax).map(|t| lattice_points_in_dilate(p, t).map(|c| (t, c))).collect()
}

/// Counts for `t = 0..=tmax` and the interpolated polynomial.
pub fn ehrhart(p: DilatePolytope, tmax: u64) -> Result<(Vec<(u64, u64)>, EhrhartFit)> {
    let counts = dilate_counts(p, tmax)?;
    let fit = ehrhart_interpolate(&counts, p.dimension())?;
    Ok((counts, fit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn small_counts() {
        assert_eq!(lattice_points_in_dilate(DilatePolytope::Btp(3), 0).unwrap(), 1);
        assert_eq!(lattice_points_in_dilate(DilatePolytope::Btp(3), 1).unwrap(), 7);
        assert_eq!(lattice_points_in_dilate(DilatePolytope::Btp(4), 1).unwrap(), 42);
        assert_eq!(lattice_points_in_dilate(DilatePolytope::Btp(2), 5).unwrap(), 6);
        assert_eq!(lattice_points_in_dilate(DilatePolytope::Tsscpp3, 1).unwrap(), 7);
    }

    #[test]
    fn interpolation_round_trip() {
        let p = RationalPolynomial::new(vec![int(1), ratio(8, 3), ratio(5, 2), ratio(5, 6)]);
        let samples: Vec<(u64, u64)> = (0..6u64)
            .map(|t| {
                let v = p.eval(&int(t as i64));
                assert!(v.is_integer());
                (t, v.to_integer().try_into().unwrap())
            })
            .collect();
        let fit = ehrhart_interpolate(&samples, 3).unwrap();
        assert_eq!(fit.polynomial, p);
        assert_eq!(fit.normalized_volume, int(5));
        assert!(ehrhart_interpolate(&samples[..3], 3).is_err());
        let mut bad = samples.clone();
        bad[5].1 += 1;
        assert!(ehrhart_interpolate(&bad, 3).is_err());
    }

    #[test]
    fn display() {
        let p = RationalPolynomial::new(vec![int(1), ratio(8, 3), ratio(5, 2), ratio(5, 6)]);
        assert_eq!(p.to_string(), "(5/6)t^3 + (5/2)t^2 + (8/3)t + 1");
        let q = RationalPolynomial::new(vec![int(-2), int(1), int(0), int(3)]);
        assert_eq!(q.to_string(), "3t^3 + t - 2");
        assert_eq!(RationalPolynomial::new(vec![int(0)]).to_string(), "0");
    }

    #[test]
    fn ceilings() {
        if std::env::var(CEILING_ENV).is_err() {
            assert!(matches!(lattice_points_in_dilate(DilatePolytope::Btp(6), 1), Err(Error::ResourceLimit { .. })));
            assert!(matches!(lattice_points_in_dilate(DilatePolytope::Tsscpp3, 7), Err(Error::DilationLimit { .. })));
        }
    }
}
