#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use magoglab::enumerate::boolean_triangles;
use magoglab::point::RationalTrianglePoint;
use magoglab::serial::{parse, SerializedObject};
use magoglab::{BooleanTriangle, Rational};
use num_traits::{One, Signed};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Entries keyed by `(i, c)`, read straight from the rows.
pub fn cells<T: Clone>(rows: &[Vec<T>]) -> HashMap<(usize, usize), T> {
    let n = rows.len() + 1;
    let mut out = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        let i = r + 1;
        for (k, v) in row.iter().enumerate() {
            out.insert((i, n - i + k), v.clone());
        }
    }
    out
}

/// Slack of every `(i, j)` diagonal inequality of the `t`-dilate, summed
/// term by term from the defining formula.
pub fn diagonal_slacks_by_hand(n: usize, b: &HashMap<(usize, usize), Rational>, t: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..i {
            let left: Rational = (j + 1..=i).map(|k| b[&(k, n - j - 1)].clone()).sum();
            let right: Rational = (j..=i).map(|k| b[&(k, n - j)].clone()).sum();
            out.push(t + left - right);
        }
    }
    out
}

/// Membership in the `t`-dilate of the boolean triangle polytope.
pub fn in_dilate_by_hand(n: usize, b: &HashMap<(usize, usize), Rational>, t: &Rational) -> bool {
    b.values().all(|v| !v.is_negative() && v <= t) && diagonal_slacks_by_hand(n, b, t).iter().all(|s| !s.is_negative())
}

pub fn triangles(n: usize) -> &'static [BooleanTriangle] {
    static CACHE: OnceLock<Vec<Vec<BooleanTriangle>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=6).map(|n| boolean_triangles(n.max(1)).unwrap().collect()).collect())[n]
}

/// A random convex combination of at most `max_terms` order-`n` triangles,
/// with the combination summed by hand.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> (RationalTrianglePoint, Vec<(Rational, BooleanTriangle)>) {
    let k = rng.random_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..k {
        let b = triangles(n).choose(rng).unwrap().clone();
        terms.push((Rational::from_integer(rng.random_range(1..=20).into()), b));
    }
    let total: Rational = terms.iter().map(|(w, _)| w.clone()).sum();
    for (w, _) in &mut terms {
        *w /= total.clone();
    }
    let rows: Vec<Vec<Rational>> = (1..n)
        .map(|i| {
            (0..i)
                .map(|k| terms.iter().map(|(w, b)| w * Rational::from_integer((b.to_rows()[i - 1][k]).into())).sum())
                .collect()
        })
        .collect();
    (RationalTrianglePoint::from_rows(rows).unwrap(), terms)
}

/// Checks a decomposition by hand: positive weights summing to one, valid
/// vertices, and the weighted vertex sum equal to the point entry by entry.
pub fn decomposition_is_sound(point: &RationalTrianglePoint, terms: &[(Rational, BooleanTriangle)]) -> bool {
    let n = point.order();
    if terms.iter().any(|(w, _)| !w.is_positive()) || terms.iter().map(|(w, _)| w.clone()).sum::<Rational>() != Rational::one() {
        return false;
    }
    for (_, b) in terms {
        let rows: Vec<Vec<Rational>> = b.to_rows().into_iter().map(|r| r.into_iter().map(|v| Rational::from_integer(v.into())).collect()).collect();
        if b.order() != n || !in_dilate_by_hand(n, &cells(&rows), &Rational::one()) {
            return false;
        }
    }
    let vertex_rows: Vec<Vec<Vec<i64>>> = terms.iter().map(|(_, b)| b.to_rows()).collect();
    point.rows().enumerate().all(|(r, row)| {
        row.iter().enumerate().all(|(k, v)| {
            let sum: Rational =
                terms.iter().zip(&vertex_rows).map(|((w, _), rows)| w * Rational::from_integer(rows[r][k].into())).sum();
            sum == *v
        })
    })
}

pub fn fixture(name: &str) -> SerializedObject {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}
