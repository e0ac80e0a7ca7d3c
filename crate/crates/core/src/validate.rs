//! Validators for the inequality systems that carve out square sign matrices,
//! magog matrices and alternating sign matrices.
//!
//! Every validator stops at the first violated constraint unless it is run
//! with [`Mode::All`]. Violation indices are 1-based.

use std::fmt;

use serde::Serialize;

use crate::matrix::SignMatrix;

/// Identifies which family of constraints a violation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    /// Column `j` sums to one.
    ColumnSum,
    /// Row `i` sums to one.
    RowSum,
    /// Column prefix sum through row `i` lies in `[0, 1]`.
    ColumnPrefix,
    /// Row prefix sum through column `j` is nonnegative.
    RowPrefix,
    /// The `(i, j)`-special inequality of magog matrices.
    Special,
    /// Row prefix sum through column `j` is at most one (ASM condition).
    AsmRowPrefix,
    /// Row `i+1` prefix plus column `j+1` prefix is at least one, for `i + j >= n - 1`.
    LShape,
    /// Rows one and two cover at least one unit, indexed by `j`.
    TopRows,
    /// Columns one and two cover at least one unit, indexed by `i`.
    LeftColumns,
    /// Triangle entry lies in `1..=n`.
    TriangleBound,
    /// Triangle rows strictly increase.
    RowIncrease,
    /// `t[i+1][k+1] <= t[i][k] + 1`.
    DiagonalPlusOne,
    /// Bottom row is `1, 2, ..., n`.
    BottomRow,
    /// Entry is nonnegative.
    EntryLower,
    /// Entry is at most one.
    EntryUpper,
    /// The `(i, j)`-diagonal inequality of boolean triangles.
    Diagonal,
}

impl Constraint {
    pub fn name(self) -> &'static str {
        match self {
            Constraint::ColumnSum => "column-sum",
            Constraint::RowSum => "row-sum",
            Constraint::ColumnPrefix => "column-prefix",
            Constraint::RowPrefix => "row-prefix",
            Constraint::Special => "special",
            Constraint::AsmRowPrefix => "asm-row-prefix",
            Constraint::LShape => "l-shape",
            Constraint::TopRows => "top-rows",
            Constraint::LeftColumns => "left-columns",
            Constraint::TriangleBound => "triangle-bound",
            Constraint::RowIncrease => "row-increase",
            Constraint::DiagonalPlusOne => "diagonal-plus-one",
            Constraint::BottomRow => "bottom-row",
            Constraint::EntryLower => "entry-lower",
            Constraint::EntryUpper => "entry-upper",
            Constraint::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub indices: Vec<usize>,
}

impl Violation {
    pub fn new(constraint: Constraint, indices: &[usize]) -> Self {
        Violation { constraint, indices: indices.to_vec() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{} at ({})", self.constraint, idx.join(", "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    valid: bool,
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid() -> Self {
        ValidationReport { valid: true, violations: Vec::new() }
    }

    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { valid: violations.is_empty(), violations }
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// True when some violation matches the given constraint and indices.
    pub fn contains(&self, constraint: Constraint, indices: &[usize]) -> bool {
        self.violations.iter().any(|v| v.constraint == constraint && v.indices == indices)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "invalid: {}", parts.join("; "))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the first violated constraint.
    #[default]
    FirstFailure,
    /// Collect every violated constraint.
    All,
}

/// Accumulates violations and tells the caller when to stop.
pub(crate) struct Collector {
    mode: Mode,
    violations: Vec<Violation>,
}

impl Collector {
    pub(crate) fn new(mode: Mode) -> Self {
        Collector { mode, violations: Vec::new() }
    }

    /// Records a violation. Returns true when checking should stop.
    pub(crate) fn fail(&mut self, constraint: Constraint, indices: &[usize]) -> bool {
        self.violations.push(Violation::new(constraint, indices));
        self.mode == Mode::FirstFailure
    }

    pub(crate) fn finish(self) -> ValidationReport {
        ValidationReport::from_violations(self.violations)
    }
}

/// Runs `$check`; returns the finished report from the enclosing function
/// when the collector asks to stop.
macro_rules! check {
    ($c:expr, $cond:expr, $constraint:expr, $($idx:expr),+) => {
        if !$cond && $c.fail($constraint, &[$($idx),+]) {
            return $c.finish();
        }
    };
}
pub(crate) use check;

pub fn validate_square_sign(m: &SignMatrix) -> ValidationReport {
    validate_square_sign_with(m, Mode::FirstFailure)
}

pub fn validate_square_sign_with(m: &SignMatrix, mode: Mode) -> ValidationReport {
    let mut c = Collector::new(mode);
    square_sign_into(m, &mut c);
    c.finish()
}

fn square_sign_into(m: &SignMatrix, c: &mut Collector) -> bool {
    let n = m.order();
    macro_rules! fail {
        ($cons:expr, $($idx:expr),+) => {
            if c.fail($cons, &[$($idx),+]) {
                return true;
            }
        };
    }
    for j in 0..n {
        let s: i32 = (0..n).map(|i| m.get(i, j) as i32).sum();
        if s != 1 {
            fail!(Constraint::ColumnSum, j + 1);
        }
    }
    for i in 0..n {
        let s: i32 = m.row(i).iter().map(|&v| v as i32).sum();
        if s != 1 {
            fail!(Constraint::RowSum, i + 1);
        }
    }
    let mut col = vec![0i32; n];
    for i in 0..n {
        for (j, acc) in col.iter_mut().enumerate() {
            *acc += m.get(i, j) as i32;
            if !(0..=1).contains(acc) {
                fail!(Constraint::ColumnPrefix, i + 1, j + 1);
            }
        }
    }
    for i in 0..n {
        let mut acc = 0i32;
        for j in 0..n {
            acc += m.get(i, j) as i32;
            if acc < 0 {
                fail!(Constraint::RowPrefix, i + 1, j + 1);
            }
        }
    }
    false
}

pub fn validate_magog(m: &SignMatrix) -> ValidationReport {
    validate_magog_with(m, Mode::FirstFailure)
}

pub fn validate_magog_with(m: &SignMatrix, mode: Mode) -> ValidationReport {
    let mut c = Collector::new(mode);
    if square_sign_into(m, &mut c) {
        return c.finish();
    }
    let n = m.order();
    let prefix = PrefixSums::new(m);
    for i in 1..n.saturating_sub(1) {
        for j in 1..n - 1 {
            let value = special_value(&prefix, i, j);
            check!(c, value >= 0, Constraint::Special, i, j);
        }
    }
    c.finish()
}

/// Left-hand side of the `(i, j)`-special inequality (1-based `i`, `j`).
fn special_value(p: &PrefixSums, i: usize, j: usize) -> i32 {
    p.row(i + 1, j) + p.col(i + 1, j + 1) - p.col(i, j)
}

pub fn validate_asm(m: &SignMatrix) -> ValidationReport {
    validate_asm_with(m, Mode::FirstFailure)
}

pub fn validate_asm_with(m: &SignMatrix, mode: Mode) -> ValidationReport {
    let mut c = Collector::new(mode);
    if square_sign_into(m, &mut c) {
        return c.finish();
    }
    let n = m.order();
    for i in 0..n {
        let mut acc = 0i32;
        for j in 0..n {
            acc += m.get(i, j) as i32;
            check!(c, acc <= 1, Constraint::AsmRowPrefix, i + 1, j + 1);
        }
    }
    c.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub square_sign: bool,
    pub magog: bool,
    pub asm: bool,
}

pub fn classify(m: &SignMatrix) -> Classification {
    Classification {
        square_sign: validate_square_sign(m).is_valid(),
        magog: validate_magog(m).is_valid(),
        asm: validate_asm(m).is_valid(),
    }
}

/// Row and column prefix sums with 1-based accessors; index 0 is the empty sum.
pub(crate) struct PrefixSums {
    n: usize,
    rows: Vec<i32>,
    cols: Vec<i32>,
}

impl PrefixSums {
    pub(crate) fn new(m: &SignMatrix) -> Self {
        let n = m.order();
        let w = n + 1;
        let mut rows = vec![0; w * w];
        let mut cols = vec![0; w * w];
        for i in 1..=n {
            for j in 1..=n {
                let v = m.get(i - 1, j - 1) as i32;
                rows[i * w + j] = rows[i * w + j - 1] + v;
                cols[i * w + j] = cols[(i - 1) * w + j] + v;
            }
        }
        PrefixSums { n, rows, cols }
    }

    /// Sum of row `i` through column `j`.
    pub(crate) fn row(&self, i: usize, j: usize) -> i32 {
        self.rows[i * (self.n + 1) + j]
    }

    /// Sum of column `j` through row `i`.
    pub(crate) fn col(&self, i: usize, j: usize) -> i32 {
        self.cols[i * (self.n + 1) + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SignMatrix {
        SignMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn square_sign_examples() {
        assert!(validate_square_sign(&SignMatrix::identity(3)).is_valid());
        assert!(validate_square_sign(&m(&[&[0, 0, 1], &[1, 1, -1], &[0, 0, 1]])).is_valid());
        let r = validate_square_sign(&m(&[&[1, 0], &[1, 0]]));
        assert!(!r.is_valid());
        assert_eq!(r.first(), Some(&Violation::new(Constraint::ColumnSum, &[1])));
    }

    #[test]
    fn all_mode_reports_everything() {
        let r = validate_square_sign_with(&m(&[&[1, 0], &[1, 0]]), Mode::All);
        assert!(r.contains(Constraint::ColumnSum, &[1]));
        assert!(r.contains(Constraint::ColumnSum, &[2]));
        assert!(r.contains(Constraint::ColumnPrefix, &[2, 1]));
        let first = validate_square_sign(&m(&[&[1, 0], &[1, 0]]));
        assert_eq!(first.violations().len(), 1);
    }

    #[test]
    fn magog_examples() {
        let bad = m(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let r = validate_magog_with(&bad, Mode::All);
        assert_eq!(r.violations(), &[Violation::new(Constraint::Special, &[2, 2])]);

        let good = m(&[&[0, 0, 0, 1], &[0, 1, 1, -1], &[1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert!(validate_magog(&good).is_valid());

        let p132 = m(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let r = validate_magog(&p132);
        assert_eq!(r.first(), Some(&Violation::new(Constraint::Special, &[1, 1])));
    }

    #[test]
    fn asm_examples() {
        assert!(validate_asm(&m(&[&[0, 1, 0], &[1, -1, 1], &[0, 1, 0]])).is_valid());
        let r = validate_asm(&m(&[&[0, 0, 1], &[1, 1, -1], &[0, 0, 1]]));
        assert_eq!(r.first(), Some(&Violation::new(Constraint::AsmRowPrefix, &[2, 2])));
        for n in 1..6 {
            assert!(validate_asm(&SignMatrix::identity(n)).is_valid());
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&m(&[&[0, 1, 0], &[1, -1, 1], &[0, 1, 0]]));
        assert_eq!(c, Classification { square_sign: true, magog: true, asm: true });
        let c = classify(&m(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert_eq!(c, Classification { square_sign: true, magog: false, asm: true });
        let c = classify(&m(&[&[0, 0, 1], &[1, 1, -1], &[0, 0, 1]]));
        assert_eq!(c, Classification { square_sign: true, magog: true, asm: false });
        let c = classify(&m(&[&[1, 1], &[0, 0]]));
        assert_eq!(c, Classification { square_sign: false, magog: false, asm: false });
    }

    #[test]
    fn order_one() {
        assert!(validate_magog(&SignMatrix::identity(1)).is_valid());
        assert!(!validate_square_sign(&m(&[&[0]])).is_valid());
        assert!(!validate_square_sign(&m(&[&[-1]])).is_valid());
    }
}
