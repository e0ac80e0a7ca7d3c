mod common;

use common::{cells, in_dilate_by_hand};
use magoglab::ehrhart::{dilate_counts, ehrhart, ehrhart_interpolate, lattice_points_in_dilate, DilatePolytope};
use magoglab::golden::parse_polynomial;
use magoglab::rational::int;
use magoglab::Rational;
use proptest::prelude::*;

/// Counts integer points of the `t`-dilate by trying every `{0..t}` array.
fn btp_brute_force(n: usize, t: i64) -> u64 {
    let len = n * (n - 1) / 2;
    let mut digits = vec![0i64; len];
    let mut total = 0;
    loop {
        let mut rows = Vec::new();
        let mut k = 0;
        for i in 1..n {
            rows.push(digits[k..k + i].iter().map(|&v| int(v)).collect::<Vec<Rational>>());
            k += i;
        }
        if in_dilate_by_hand(n, &cells(&rows), &int(t)) {
            total += 1;
        }
        let Some(pos) = digits.iter().position(|&d| d < t) else { return total };
        digits[pos] += 1;
        digits[..pos].iter_mut().for_each(|d| *d = 0);
    }
}

/// Integer points of `t` times the order-3 magog polytope from its
/// inequality description: unit sums scaled by `t`, `a11, a12, a13, a31,
/// a32 >= 0` and `a12 + a21 + a22 >= t`.
fn tsscpp3_brute_force(t: i64) -> u64 {
    let mut total = 0;
    for a11 in -2 * t..=2 * t {
        for a12 in -2 * t..=2 * t {
            for a21 in -2 * t..=2 * t {
                for a22 in -2 * t..=2 * t {
                    let a13 = t - a11 - a12;
                    let a31 = t - a11 - a21;
                    let a32 = t - a12 - a22;
                    let ok = [a11, a12, a13, a31, a32].iter().all(|&v| v >= 0) && a12 + a21 + a22 >= t;
                    total += ok as u64;
                }
            }
        }
    }
    total
}

#[test]
fn btp_counts_match_brute_force() {
    for (n, tmax) in [(1, 3), (2, 5), (3, 5), (4, 3)] {
        for t in 0..=tmax {
            assert_eq!(lattice_points_in_dilate(DilatePolytope::Btp(n), t).unwrap(), btp_brute_force(n, t as i64), "n={n} t={t}");
        }
    }
}

#[test]
fn tsscpp3_counts_match_brute_force() {
    for t in 0..=4 {
        assert_eq!(lattice_points_in_dilate(DilatePolytope::Tsscpp3, t).unwrap(), tsscpp3_brute_force(t as i64), "t={t}");
    }
    assert_eq!(lattice_points_in_dilate(DilatePolytope::Tsscpp3, 1).unwrap(), 7);
}

#[test]
fn published_polynomials() {
    let (counts, fit) = ehrhart(DilatePolytope::Btp(3), 5).unwrap();
    assert_eq!(counts.iter().map(|c| c.1).collect::<Vec<_>>(), [1, 7, 23, 54, 105, 181]);
    assert_eq!(fit.polynomial, parse_polynomial("(5/6)t^3 + (5/2)t^2 + (8/3)t + 1").unwrap());
    assert_eq!(fit.normalized_volume, int(5));

    let (_, fit) = ehrhart(DilatePolytope::Btp(4), 7).unwrap();
    let expected = "(41/72)t^6 + (41/12)t^5 + (319/36)t^4 + (38/3)t^3 + (761/72)t^2 + (59/12)t + 1";
    assert_eq!(fit.polynomial, parse_polynomial(expected).unwrap());
    assert_eq!(fit.normalized_volume, int(410));

    let (_, fit) = ehrhart(DilatePolytope::Tsscpp3, 6).unwrap();
    let expected = "(1/8)t^4 + (11/12)t^3 + (19/8)t^2 + (31/12)t + 1";
    assert_eq!(fit.polynomial, parse_polynomial(expected).unwrap());
    assert_eq!(fit.normalized_volume, int(3));
}

#[test]
fn interpolation_rejects_inconsistent_samples() {
    assert!(ehrhart_interpolate(&[(0, 1), (1, 7), (2, 23), (3, 54), (4, 106)], 3).is_err());
    assert!(ehrhart_interpolate(&[(0, 1), (1, 2)], 3).is_err());
}

#[test]
fn ceilings_are_enforced() {
    if std::env::var(magoglab::enumerate::CEILING_ENV).is_ok_and(|v| !v.trim().is_empty()) {
        return;
    }
    assert!(lattice_points_in_dilate(DilatePolytope::Btp(6), 1).is_err());
    assert!(lattice_points_in_dilate(DilatePolytope::Btp(3), 11).is_err());
    assert!(lattice_points_in_dilate(DilatePolytope::Tsscpp3, 7).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn counts_increase_with_dilation(n in 2usize..=4, tmax in 1u64..=6) {
        let counts = dilate_counts(DilatePolytope::Btp(n), tmax).unwrap();
        prop_assert!(counts.windows(2).all(|w| w[0].1 < w[1].1));
        prop_assert_eq!(counts[1].1, [1u64, 2, 7, 42][n - 1]);
    }
}
