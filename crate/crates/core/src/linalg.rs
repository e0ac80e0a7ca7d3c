//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

/// Reduces `rows` in place to row echelon form and returns the pivot columns.
fn echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &lead;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    echelon(&mut rows).len()
}

/// Unique solution of `a x = b`, or `None` when the system is singular or
/// inconsistent.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> =
        a.iter().zip(b).map(|(row, v)| row.iter().cloned().chain(std::iter::once(v.clone())).collect()).collect();
    let pivots = echelon(&mut aug);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    Some(aug.iter().take(cols).map(|row| row[cols].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]])), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 1]])), 1);
        assert_eq!(rank(Vec::new()), 0);
    }

    #[test]
    fn solving() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(solve_unique(&a, &[int(3), int(4)]), Some(vec![int(1), int(1)]));
        let a = m(&[&[2, 0], &[0, 3], &[1, 1]]);
        assert_eq!(solve_unique(&a, &[int(1), int(1), ratio(5, 6)]), Some(vec![ratio(1, 2), ratio(1, 3)]));
        assert_eq!(solve_unique(&a, &[int(1), int(1), int(1)]), None);
        assert_eq!(solve_unique(&m(&[&[1, 1], &[2, 2]]), &[int(1), int(2)]), None);
    }
}
