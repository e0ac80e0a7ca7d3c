//! Brute-force verification of the enumerative theorems and conjectures.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::enumerate::{asms, magog_matrices, square_sign_matrices};
use crate::error::{Error, Result};
use crate::matrix::{is_132_avoiding, Permutation, SignMatrix};
use crate::stats::{inversion_stats, max_negative_ones, max_negative_ones_matrix};
use crate::tables::{binomial, catalan, product_formula};
use crate::validate::classify;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub n: usize,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<ClaimCheck>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, claim: &str, n: usize, expected: impl ToString, computed: impl ToString) {
        let expected = expected.to_string();
        let computed = computed.to_string();
        let passed = expected == computed;
        self.checks.push(ClaimCheck { claim: claim.to_string(), n, expected, computed, passed });
    }

    /// CSV with header `claim,n,expected,computed,status`.
    pub fn to_csv(&self, pass: &str, fail: &str) -> String {
        let mut out = String::from("claim,n,expected,computed,status\n");
        for c in &self.checks {
            let status = if c.passed { pass } else { fail };
            out.push_str(&format!("{},{},{},{},{}\n", c.claim, c.n, c.expected, c.computed, status));
        }
        out
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "{status:4} n={} {}: expected {}, computed {}", c.n, c.claim, c.expected, c.computed)?;
        }
        Ok(())
    }
}

struct Sample {
    n: usize,
    magog: Vec<SignMatrix>,
    inv: Vec<i64>,
    posinv: Vec<i64>,
}

impl Sample {
    fn new(n: usize) -> Result<Self> {
        let magog: Vec<SignMatrix> = magog_matrices(n)?.collect();
        let stats: Vec<_> = magog.iter().map(inversion_stats).collect();
        Ok(Sample {
            n,
            inv: stats.iter().map(|s| s.inv).collect(),
            posinv: stats.iter().map(|s| s.posinv).collect(),
            magog,
        })
    }

    fn with_inv(&self, v: i64) -> usize {
        self.inv.iter().filter(|&&x| x == v).count()
    }

    fn with_posinv(&self, v: i64) -> usize {
        self.posinv.iter().filter(|&&x| x == v).count()
    }

    fn with_one_at(&self, i: usize, j: usize) -> usize {
        if i > self.n || j > self.n {
            return 0;
        }
        self.magog.iter().filter(|m| m.get(i - 1, j - 1) == 1).count()
    }
}

/// Checks the enumerative theorems for every order `1..=n_max`.
pub fn theorem_suite(n_max: usize) -> Result<SuiteReport> {
    if n_max < 2 {
        return Err(Error::Shape("the theorem suite needs n_max >= 2".into()));
    }
    let mut r = SuiteReport::default();
    for n in 1..=n_max {
        let s = Sample::new(n)?;
        let c2 = binomial(n as u64, 2) as i64;

        // magog matrices without negative ones are the 132-avoiding permutation matrices
        let perm_magog: BTreeSet<SignMatrix> = s.magog.iter().filter(|m| m.negative_ones() == 0).cloned().collect();
        let avoiders: BTreeSet<SignMatrix> =
            Permutation::all(n).into_iter().filter(is_132_avoiding).map(|p| p.matrix()).collect();
        r.push("no-negative-ones-are-132-avoiders", n, true, perm_magog == avoiders);
        r.push("no-negative-ones-catalan", n, catalan(n as u64), perm_magog.len());

        r.push("magog-count-product-formula", n, product_formula(n), s.magog.len());
        r.push("one-at-(1,1)", n, 1, s.with_one_at(1, 1));
        if n > 1 {
            let prev = product_formula(n - 1);
            r.push("one-at-(n,1)-is-previous-count", n, &prev, s.with_one_at(n, 1));
            r.push("one-at-(n,2)-is-previous-count", n, &prev, s.with_one_at(n, 2));
            r.push("one-at-(1,n)-equals-one-at-(1,n-1)", n, s.with_one_at(1, n - 1), s.with_one_at(1, n));
        }
        r.push("one-at-(2,1)-catalan-minus-one", n, catalan(n as u64) - 1, s.with_one_at(2, 1));
        r.push("one-at-(1,2)-power-of-two-minus-one", n, (1u64 << (n - 1)) - 1, s.with_one_at(1, 2));

        r.push("inv-0", n, 1, s.with_inv(0));
        r.push("posinv-0", n, 1, s.with_posinv(0));
        if n >= 2 {
            r.push("inv-1", n, 1, s.with_inv(1));
            r.push("posinv-max-minus-one", n, n - 1, s.with_posinv(c2 - 1));
            r.push("inv-max", n, 1, s.with_inv(c2));
            r.push("posinv-max", n, 1, s.with_posinv(c2));
        }
        if n >= 3 {
            r.push("inv-2", n, n + 1, s.with_inv(2));
        }

        let bound = max_negative_ones(n);
        let mn = max_negative_ones_matrix(n);
        let cls = classify(&mn);
        r.push("extremal-matrix-negative-ones", n, bound, mn.negative_ones());
        r.push("extremal-matrix-is-magog-and-asm", n, true, cls.magog && cls.asm);
        let magog_max = s.magog.iter().map(SignMatrix::negative_ones).max().unwrap_or(0);
        r.push("max-negative-ones-magog", n, bound, magog_max);
        let asm_max = asms(n)?.map(|m| m.negative_ones()).max().unwrap_or(0);
        r.push("max-negative-ones-asm", n, bound, asm_max);

        let mut sign_count = 0u64;
        let mut sign_max_neg = 0usize;
        let mut max_inv_holders = Vec::new();
        let mut inv_bound_ok = true;
        for m in square_sign_matrices(n)? {
            sign_count += 1;
            sign_max_neg = sign_max_neg.max(m.negative_ones());
            let inv = inversion_stats(&m).inv;
            inv_bound_ok &= inv <= c2;
            if inv == c2 {
                max_inv_holders.push(m);
            }
        }
        r.push("max-negative-ones-square-sign", n, bound, sign_max_neg);
        r.push("square-sign-count", n, 1u64 << c2, sign_count);
        r.push("inv-at-most-n-choose-2", n, true, inv_bound_ok);
        r.push("only-antidiagonal-attains-max-inv", n, true, max_inv_holders == vec![SignMatrix::antidiagonal(n)]);
    }
    Ok(r)
}

/// Compares the conjectured formulas with brute-force counts for `3..=n_max`.
/// Disagreement is reported, never raised as an error.
pub fn conjecture_suite(n_max: usize) -> Result<SuiteReport> {
    if n_max < 3 {
        return Err(Error::Shape("the conjecture suite needs n_max >= 3".into()));
    }
    let mut r = SuiteReport::default();
    for n in 3..=n_max {
        let s = Sample::new(n)?;
        let m = n as u64;
        let c2 = binomial(m, 2) as i64;
        r.push("posinv-1-is-n-choose-2", n, binomial(m, 2), s.with_posinv(1));
        let f2 = 2 * binomial(m - 1, 2) + 4 * binomial(m - 1, 3) + 3 * binomial(m - 1, 4);
        r.push("posinv-2-formula", n, f2, s.with_posinv(2));
        r.push("posinv-max-minus-two-is-n(n-2)", n, m * (m - 2), s.with_posinv(c2 - 2));
        r.push("inv-max-minus-one-is-2^n-n-1", n, (1u64 << n) - m - 1, s.with_inv(c2 - 1));
    }
    Ok(r)
}
