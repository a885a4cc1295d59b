//! Exact rational arithmetic used for all weights and charges.
//!
//! Degrees are small integers, so values stay tiny, but sums of many
//! reciprocals need arbitrary precision to stay exact. Nothing in this
//! crate ever rounds: every weight comparison is a strict exact compare.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational; always stored reduced with positive denominator.
pub type Rational = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from an unsigned count.
pub fn rat_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// 1/n for a positive count, the reciprocal used by default weights.
pub fn recip_usize(n: usize) -> Rational {
    assert!(n > 0, "reciprocal of zero");
    Rational::new(BigInt::one(), BigInt::from(n))
}

/// Floor of a non-negative rational as usize.
pub fn floor_usize(q: &Rational) -> usize {
    assert!(!q.is_negative(), "floor_usize on negative rational");
    q.floor().to_integer().to_usize().expect("floor fits usize")
}

/// Renders `num/den` in lowest terms, eliding the denominator when it is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a/b` or a plain integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().ok()?;
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(Rational::new(num, den))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_elides_unit_denominator() {
        assert_eq!(format_rational(&rat(6, 1)), "6");
        assert_eq!(format_rational(&rat(19, 3)), "19/3");
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["19/3", "7", "-2/5", "0"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn floors() {
        assert_eq!(floor_usize(&rat(19, 3)), 6);
        assert_eq!(floor_usize(&rat(20, 3)), 6);
        assert_eq!(floor_usize(&rat(21, 3)), 7);
    }
}
