//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Formats a rational as `p/q` in lowest terms with `q > 0`, including `q = 1`.
pub fn to_pq(r: &Rational) -> String {
    // BigRational is always kept reduced with a positive denominator.
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_pq(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

/// Smallest integer `>= r`.
pub fn ceil_to_i64(r: &Rational) -> Option<i64> {
    let c = r.ceil();
    i64::try_from(c.to_integer()).ok()
}

pub fn floor_to_i64(r: &Rational) -> Option<i64> {
    i64::try_from(r.floor().to_integer()).ok()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_always_has_denominator() {
        assert_eq!(to_pq(&zero()), "0/1");
        assert_eq!(to_pq(&rat(2, 4)), "1/2");
        assert_eq!(to_pq(&rat(3, -6)), "-1/2");
        assert_eq!(to_pq(&int(5)), "5/1");
    }

    #[test]
    fn pq_parses_back() {
        for r in [rat(1, 2), rat(-7, 3), zero(), one()] {
            assert_eq!(parse_pq(&to_pq(&r)), Some(r));
        }
        assert_eq!(parse_pq("3"), Some(int(3)));
        assert_eq!(parse_pq("1/0"), None);
        assert_eq!(parse_pq("x/2"), None);
    }

    #[test]
    fn ceil_and_floor() {
        assert_eq!(ceil_to_i64(&rat(3, 2)), Some(2));
        assert_eq!(floor_to_i64(&rat(3, 2)), Some(1));
        assert_eq!(ceil_to_i64(&int(3)), Some(3));
    }
}
