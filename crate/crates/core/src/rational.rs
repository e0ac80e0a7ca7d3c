//! Exact rationals and the `p/q` text form used everywhere in serialized data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serializer;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p / q` in lowest terms. Panics when `q` is zero.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text form: always `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p` or `p/q` with optional sign on `p`; no whitespace, no decimals.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("{s:?} is not a rational of the form p or p/q"));
    let parse_int = |t: &str, signed: bool| -> Result<BigInt> {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s, true)?)),
        Some((p, q)) => {
            let p = parse_int(p, true)?;
            let q = parse_int(q, false)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{s:?} has a zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["1/2", "-3/4", "0/1", "7/1", "123456789012345678901234567891/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("-5").unwrap()), "-5/1");
        for bad in ["", "/", "1/0", "1.5", " 1", "1/2/3", "--1", "+1", "1/", "3/-6"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn helpers() {
        assert!(is_integral(&int(3)));
        assert!(!is_integral(&ratio(1, 3)));
        assert_eq!(common_denominator(&[ratio(1, 4), ratio(1, 6), int(2)]), BigInt::from(12));
        assert_eq!(abs(&ratio(-1, 2)), ratio(1, 2));
    }
}
