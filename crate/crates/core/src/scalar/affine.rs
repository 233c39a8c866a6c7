use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::EpsScalar;
use crate::error::{Error, Result};
use crate::rat::{self, Rational};

/// A rational affine function `constant + slope*eps`. Used for energies and
/// charges, which stay affine in `eps` along every sector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsAffine {
    pub constant: Rational,
    pub slope: Rational,
}

impl EpsAffine {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        Self { constant, slope }
    }

    pub fn rational(constant: Rational) -> Self {
        Self { constant, slope: Rational::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.slope.is_zero()
    }

    /// Converts an eps-polynomial with rational coefficients of degree at most one.
    pub fn from_eps(e: &EpsScalar) -> Option<Self> {
        if e.degree().unwrap_or(0) > 1 {
            return None;
        }
        Some(Self { constant: e.coeff(0).as_rational()?, slope: e.coeff(1).as_rational()? })
    }

    pub fn to_eps(&self) -> EpsScalar {
        EpsScalar::affine(self.constant.clone(), self.slope.clone())
    }
}

impl Ord for EpsAffine {
    fn cmp(&self, other: &Self) -> Ordering {
        self.constant.cmp(&other.constant).then_with(|| self.slope.cmp(&other.slope))
    }
}

impl PartialOrd for EpsAffine {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EpsAffine {
    /// `3/2`, `1-eps`, `-1/2+3*eps`, `-eps`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            return write!(f, "{}", self.constant);
        }
        let sign = if self.slope.is_negative() { "-" } else { "+" };
        if self.constant.is_zero() {
            if sign == "-" {
                f.write_str(sign)?;
            }
        } else {
            write!(f, "{}{sign}", self.constant)?;
        }
        let mag = self.slope.abs();
        if mag.is_one() {
            write!(f, "eps")
        } else {
            write!(f, "{mag}*eps")
        }
    }
}

impl FromStr for EpsAffine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("eps") else {
            return Ok(Self::rational(rat::parse_rational(&t)?));
        };
        // Split at the last sign that is not leading.
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (constant, coeff) = match cut {
            Some(i) => (rat::parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::zero(), body),
        };
        let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
        let slope = match coeff {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => rat::parse_rational(c.strip_prefix('+').unwrap_or(c))?,
        };
        Ok(Self { constant, slope })
    }
}

impl Serialize for EpsAffine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EpsAffine {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn text_round_trip() {
        for a in [
            EpsAffine::rational(rat(3, 2)),
            EpsAffine::new(int(1), int(-1)),
            EpsAffine::new(rat(-1, 2), int(3)),
            EpsAffine::new(int(0), rat(1, 2)),
            EpsAffine::new(int(-2), int(1)),
        ] {
            assert_eq!(a.to_string().parse::<EpsAffine>().unwrap(), a, "{a}");
        }
        assert_eq!(EpsAffine::new(int(1), int(-1)).to_string(), "1-eps");
        assert_eq!(EpsAffine::new(int(0), int(-1)).to_string(), "-eps");
        assert_eq!(EpsAffine::new(int(0), rat(1, 2)).to_string(), "1/2*eps");
        assert_eq!("eps".parse::<EpsAffine>().unwrap(), EpsAffine::new(int(0), int(1)));
        assert_eq!("-eps".parse::<EpsAffine>().unwrap(), EpsAffine::new(int(0), int(-1)));
    }
}
