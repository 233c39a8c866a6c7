use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GradedScalar;
use crate::rat::Rational;

/// Polynomial in the regulator `eps` with [`GradedScalar`] coefficients.
/// `coeffs[i]` multiplies `eps^i`; trailing zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsScalar {
    coeffs: Vec<GradedScalar>,
}

impl EpsScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GradedScalar::one())
    }

    pub fn constant(c: GradedScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::constant(GradedScalar::from_rational(q))
    }

    /// `c0 + c1*eps`.
    pub fn affine(c0: Rational, c1: Rational) -> Self {
        Self::from_coeffs(vec![c0.into(), c1.into()])
    }

    pub fn eps() -> Self {
        Self::from_coeffs(vec![GradedScalar::zero(), GradedScalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<GradedScalar>) -> Self {
        while coeffs.last().is_some_and(GradedScalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[GradedScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> GradedScalar {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn at_zero(&self) -> GradedScalar {
        self.coeff(0)
    }

    pub fn scale(&self, c: &GradedScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval_f64(&self, eps: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * eps + c.to_f64())
    }

    /// Exact polynomial quotient, when the division leaves no remainder.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        let d_deg = divisor.degree()?;
        let lead = &divisor.coeffs[d_deg];
        let mut rem = self.coeffs.clone();
        if rem.len() < d_deg + 1 {
            return if self.is_zero() { Some(Self::zero()) } else { None };
        }
        let mut quot = vec![GradedScalar::zero(); rem.len() - d_deg];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + d_deg];
            if top.is_zero() {
                continue;
            }
            let c = top.checked_div(lead)?;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + k] = &rem[i + k] - &(&c * dc);
            }
            quot[i] = c;
        }
        if rem.iter().all(GradedScalar::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }
}

impl From<GradedScalar> for EpsScalar {
    fn from(c: GradedScalar) -> Self {
        Self::constant(c)
    }
}

impl Add<&EpsScalar> for &EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: &EpsScalar) -> EpsScalar {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        EpsScalar::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub<&EpsScalar> for &EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: &EpsScalar) -> EpsScalar {
        self + &(-rhs)
    }
}

impl Neg for &EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&EpsScalar> for &EpsScalar {
    type Output = EpsScalar;
    fn mul(self, rhs: &EpsScalar) -> EpsScalar {
        if self.is_zero() || rhs.is_zero() {
            return EpsScalar::zero();
        }
        let mut out = vec![GradedScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        EpsScalar::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for EpsScalar {
            type Output = EpsScalar;
            fn $m(self, rhs: EpsScalar) -> EpsScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.len() > 1 { format!("({c})") } else { c.to_string() };
            match i {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*eps")?,
                _ => write!(f, "{body}*eps^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for EpsScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EpsScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::from_coeffs(Vec::deserialize(d)?))
    }
}
