//! Exact two-phase revised simplex over the rationals.
//!
//! Problems are in standard form: minimize `c·x` subject to `A x = b`,
//! `x >= 0`, with a small integer constraint matrix. The basis inverse is
//! kept exactly; pricing uses an integer-scaled dual vector. Both entering
//! and leaving variables follow Bland's rule, so the method terminates.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::{common_denominator, int, Rational};

#[derive(Clone, Debug)]
pub struct StandardForm {
    rows: usize,
    columns: Vec<Vec<i64>>,
    rhs: Vec<Rational>,
    cost: Vec<Rational>,
}

impl StandardForm {
    /// `columns[j]` is column `j` of `A` and must have `rhs.len()` entries.
    /// An empty `cost` means a pure feasibility problem.
    pub fn new(columns: Vec<Vec<i64>>, rhs: Vec<Rational>, cost: Vec<Rational>) -> Self {
        let rows = rhs.len();
        assert!(columns.iter().all(|c| c.len() == rows), "column length differs from row count");
        assert!(cost.is_empty() || cost.len() == columns.len(), "cost length differs from column count");
        StandardForm { rows, columns, rhs, cost }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    /// `y` with `y·A_j <= 0` for every column and `y·b > 0`.
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

pub fn solve(lp: &StandardForm) -> LpOutcome {
    Simplex::new(lp).run()
}

/// Checks a Farkas certificate against the problem data.
pub fn verify_farkas(lp: &StandardForm, y: &[Rational]) -> bool {
    if y.len() != lp.rows {
        return false;
    }
    let yb: Rational = y.iter().zip(&lp.rhs).map(|(a, b)| a * b).sum();
    yb.is_positive()
        && lp.columns.iter().all(|col| {
            let s: Rational = y.iter().zip(col).filter(|(_, &a)| a != 0).map(|(y, &a)| y * int(a)).sum();
            !s.is_positive()
        })
}

struct Simplex<'a> {
    lp: &'a StandardForm,
    m: usize,
    n: usize,
    /// `+1` or `-1` per row, chosen so that the flipped right-hand side is nonnegative.
    sign: Vec<i64>,
    binv: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    xb: Vec<Rational>,
}

impl<'a> Simplex<'a> {
    fn new(lp: &'a StandardForm) -> Self {
        let m = lp.rows;
        let n = lp.columns.len();
        let sign: Vec<i64> = lp.rhs.iter().map(|b| if b.is_negative() { -1 } else { 1 }).collect();
        let binv = (0..m).map(|i| (0..m).map(|k| int((i == k) as i64)).collect()).collect();
        let xb = lp.rhs.iter().zip(&sign).map(|(b, &s)| b * int(s)).collect();
        Simplex { lp, m, n, sign, binv, basis: (n..n + m).collect(), is_basic: vec![false; n], xb }
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.n
    }

    /// Flipped column `j` of the structural part.
    fn column(&self, j: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.lp.columns[j].iter().enumerate().filter(|(_, &a)| a != 0).map(move |(i, &a)| (i, a * self.sign[i]))
    }

    fn ftran(&self, j: usize) -> Vec<Rational> {
        let mut u = vec![int(0); self.m];
        for (k, a) in self.column(j) {
            let a = int(a);
            for (i, ui) in u.iter_mut().enumerate() {
                if !self.binv[i][k].is_zero() {
                    *ui += &self.binv[i][k] * &a;
                }
            }
        }
        u
    }

    fn duals(&self, cost: &dyn Fn(usize) -> Rational) -> Vec<Rational> {
        let mut y = vec![int(0); self.m];
        for (i, &var) in self.basis.iter().enumerate() {
            let c = cost(var);
            if c.is_zero() {
                continue;
            }
            for (k, yk) in y.iter_mut().enumerate() {
                if !self.binv[i][k].is_zero() {
                    *yk += &c * &self.binv[i][k];
                }
            }
        }
        y
    }

    /// Smallest nonbasic structural column with negative reduced cost.
    fn entering(&self, y: &[Rational], cost: &dyn Fn(usize) -> Rational) -> Option<usize> {
        let l = common_denominator(y);
        let scaled: Vec<BigInt> = y.iter().map(|v| v.numer() * (&l / v.denom())).collect();
        let small: Option<Vec<i64>> = scaled.iter().map(|v| v.to_i64()).collect();
        for j in 0..self.n {
            if self.is_basic[j] {
                continue;
            }
            let c = cost(j);
            // reduced cost is negative iff c_j * L < sum_k y_k L a_kj
            let negative = match (&small, c.is_zero()) {
                (Some(ys), true) => self.column(j).map(|(k, a)| ys[k] as i128 * a as i128).sum::<i128>() > 0,
                _ => {
                    let s: BigInt = self.column(j).map(|(k, a)| &scaled[k] * a).sum();
                    c.numer() * &l < s * c.denom()
                }
            };
            if negative {
                return Some(j);
            }
        }
        None
    }

    /// Bland's leaving row: minimum ratio, ties broken by smallest variable index.
    fn leaving(&self, u: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_positive() {
                continue;
            }
            let ratio = &self.xb[i] / ui;
            best = match best {
                None => Some((i, ratio)),
                Some((r, br)) => {
                    if ratio < br || (ratio == br && self.basis[i] < self.basis[r]) {
                        Some((i, ratio))
                    } else {
                        Some((r, br))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }

    fn pivot(&mut self, r: usize, j: usize, u: &[Rational]) {
        let p = u[r].clone();
        for v in self.binv[r].iter_mut() {
            *v /= &p;
        }
        self.xb[r] /= &p;
        let pivot_row = self.binv[r].clone();
        let pivot_x = self.xb[r].clone();
        for i in 0..self.m {
            if i == r || u[i].is_zero() {
                continue;
            }
            for (v, pr) in self.binv[i].iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &u[i] * pr;
                }
            }
            self.xb[i] -= &u[i] * &pivot_x;
        }
        let old = self.basis[r];
        if !self.is_artificial(old) {
            self.is_basic[old] = false;
        }
        self.basis[r] = j;
        self.is_basic[j] = true;
    }

    /// Runs simplex iterations; returns false when unbounded.
    fn iterate(&mut self, cost: &dyn Fn(usize) -> Rational) -> bool {
        loop {
            let y = self.duals(cost);
            let Some(j) = self.entering(&y, cost) else {
                return true;
            };
            let u = self.ftran(j);
            let Some(r) = self.leaving(&u) else {
                return false;
            };
            self.pivot(r, j, &u);
        }
    }

    fn run(mut self) -> LpOutcome {
        let n = self.n;
        let phase_one = move |var: usize| int((var >= n) as i64);
        let bounded = self.iterate(&phase_one);
        debug_assert!(bounded, "phase one is bounded below by zero");
        let infeasibility: Rational =
            self.basis.iter().zip(&self.xb).filter(|(&v, _)| v >= n).map(|(_, x)| x.clone()).sum();
        if infeasibility.is_positive() {
            let y = self.duals(&phase_one);
            let farkas = y.into_iter().zip(&self.sign).map(|(v, &s)| v * int(s)).collect();
            return LpOutcome::Infeasible { farkas };
        }
        self.drive_out_artificials();
        if !self.lp.cost.is_empty() {
            let cost_vec = self.lp.cost.clone();
            let phase_two = move |var: usize| if var < n { cost_vec[var].clone() } else { int(0) };
            if !self.iterate(&phase_two) {
                return LpOutcome::Unbounded;
            }
        }
        let mut x = vec![int(0); n];
        for (i, &var) in self.basis.iter().enumerate() {
            if var < n {
                x[var] = self.xb[i].clone();
            }
        }
        let value = if self.lp.cost.is_empty() {
            int(0)
        } else {
            x.iter().zip(&self.lp.cost).map(|(a, b)| a * b).sum()
        };
        LpOutcome::Optimal { x, value }
    }

    /// Pivots zero-level artificials out of the basis where a structural
    /// column allows it; the rest sit on redundant rows and stay at zero.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.m {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            let candidate = (0..self.n).find(|&j| {
                !self.is_basic[j]
                    && self.column(j).any(|(k, _)| !self.binv[r][k].is_zero())
                    && !self.column(j).map(|(k, a)| &self.binv[r][k] * int(a)).sum::<Rational>().is_zero()
            });
            if let Some(j) = candidate {
                let u = self.ftran(j);
                self.pivot(r, j, &u);
            }
        }
    }
}
