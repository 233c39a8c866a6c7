//! Rational helpers shared across the crate: construction shortcuts,
//! the `"p/q"` string encoding, and a few predicates on exponents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Encodes a rational as `"p/q"`, always with an explicit denominator.
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer or half-integer.
pub fn is_half_integral(r: &Rational) -> bool {
    r.denom().is_one() || *r.denom() == BigInt::from(2)
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    is_integer(r) && !r.is_positive()
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on a scaled quotient for magnitudes outside f64 conversion.
        let (q, _) = r.numer().div_rem(r.denom());
        q.to_f64().unwrap_or(f64::NAN)
    })
}

/// Falling factorial p(p-1)...(p-j+1).
pub fn falling_factorial(p: &Rational, j: u32) -> Rational {
    (0..j).fold(Rational::one(), |acc, i| acc * (p - int(i as i64)))
}

pub fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(acc)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn serialize_pq<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_pq(r))
}

pub fn deserialize_pq<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    parse_rational(&text).map_err(de::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        for r in [rat(-3, 2), int(0), int(7), rat(5, -10)] {
            assert_eq!(parse_rational(&to_pq(&r)).unwrap(), r);
        }
        assert_eq!(to_pq(&int(-1)), "-1/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn falling_factorial_rational() {
        // (-1)_2 = (-1)(-2) = 2
        assert_eq!(falling_factorial(&int(-1), 2), int(2));
        assert_eq!(falling_factorial(&rat(1, 2), 3), rat(1, 2) * rat(-1, 2) * rat(-3, 2));
        assert_eq!(falling_factorial(&int(5), 0), int(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 0), int(1));
        assert_eq!(binomial(3, 3), int(1));
    }
}
