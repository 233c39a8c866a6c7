use std::fmt;

use serde::{Deserialize, Serialize};

use super::GradedScalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn from_i32(s: i32) -> Self {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

// Relative widening applied to every floating operation below; generous
// compared with the half-ulp error of a correctly rounded step.
const WIDEN: f64 = 8.0 * f64::EPSILON;

/// Sign of an exact scalar.
///
/// Values confined to one pi-grade have an exact sign (the coefficient lies
/// in Q(sqrt 2)). Otherwise each grade is enclosed in an outward-widened
/// interval and the sum must exclude zero.
pub fn scalar_sign(v: &GradedScalar) -> Result<Sign> {
    let grades = v.by_pi_grade();
    if grades.is_empty() {
        return Ok(Sign::Zero);
    }
    if grades.len() == 1 {
        let (_, c) = grades.iter().next().expect("one grade");
        return Ok(Sign::from_i32(c.signum()));
    }
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for (&k, c) in &grades {
        let s = c.signum() as f64;
        let mag = c.abs_f64() * std::f64::consts::PI.powf(k as f64 / 2.0);
        let (m_lo, m_hi) = (mag * (1.0 - WIDEN * (k.abs() as f64 + 4.0)), mag * (1.0 + WIDEN * (k.abs() as f64 + 4.0)));
        if s > 0.0 {
            lo += m_lo;
            hi += m_hi;
        } else {
            lo -= m_hi;
            hi -= m_lo;
        }
        lo -= lo.abs() * WIDEN;
        hi += hi.abs() * WIDEN;
    }
    if lo > 0.0 {
        Ok(Sign::Positive)
    } else if hi < 0.0 {
        Ok(Sign::Negative)
    } else {
        Err(Error::IndeterminateSign(format!("{v} encloses [{lo:e}, {hi:e}]")))
    }
}
