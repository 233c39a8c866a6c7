//! Exact Gamma values on integers and half-integers, and the Laurent data of
//! `Gamma(base + slope*eps)` at `eps -> 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{GradedScalar, LaurentValue};
use crate::error::{Error, Result};
use crate::rat::{self, Rational};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `Gamma(arg)` for integer or half-integer `arg`, continued to negative
/// half-integers through `Gamma(s) = Gamma(s + 1) / s`.
pub fn gamma_exact(arg: &Rational) -> Result<GradedScalar> {
    if rat::is_integer(arg) {
        if !arg.is_positive() {
            return Err(Error::Pole(arg.to_string()));
        }
        let n = arg
            .to_u32()
            .ok_or_else(|| Error::Domain(format!("Gamma argument {arg} too large")))?;
        return Ok(GradedScalar::from_rational(BigRational::from_integer(rat::factorial(n - 1))));
    }
    if !rat::is_half_integral(arg) {
        return Err(Error::Domain(format!("exact Gamma needs an integer or half-integer, got {arg}")));
    }
    // arg = m + 1/2
    let m = (arg - rat::half())
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Domain(format!("Gamma argument {arg} too large")))?;
    let mut q = Rational::one();
    if m >= 0 {
        for i in 0..m {
            q *= rat::half() + rat::int(i);
        }
    } else {
        for i in 1..=(-m) {
            q /= rat::half() - rat::int(i);
        }
    }
    Ok(GradedScalar::monomial(q, 0, 1))
}

/// Laurent data of `Gamma(base + slope*eps)`.
///
/// Off the poles the value is analytic and the finite part is exact. At
/// `base = -m` the residue is `(-1)^m / (m! * slope)` and the finite part,
/// `(-1)^m * digamma(m + 1) / m!`, is returned numerically only.
pub fn gamma_laurent(base: &Rational, slope: &Rational) -> Result<LaurentValue> {
    if !rat::is_half_integral(base) {
        return Err(Error::Domain(format!("Laurent Gamma needs an integer or half-integer base, got {base}")));
    }
    if !rat::is_nonpositive_integer(base) {
        return Ok(LaurentValue::exact(gamma_exact(base)?));
    }
    if slope == &Rational::from_integer(BigInt::from(0)) {
        return Err(Error::Pole(base.to_string()));
    }
    let m = (-base)
        .to_integer()
        .to_u32()
        .ok_or_else(|| Error::Domain(format!("pole order {base} too large")))?;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let inv_fact = BigRational::new(BigInt::from(sign), rat::factorial(m));
    let pole = GradedScalar::from_rational(&inv_fact / slope);
    let harmonic: f64 = (1..=m).map(|i| 1.0 / i as f64).sum();
    let finite_numeric = rat::to_f64(&inv_fact) * (harmonic - EULER_GAMMA);
    Ok(LaurentValue { pole, finite: None, finite_numeric: Some(finite_numeric) })
}
