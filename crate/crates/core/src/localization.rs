use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rat::Rational;

/// How `integral_eps^inf |psi|^2` behaves as the cutoff `eps -> 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Divergence {
    None,
    Log,
    Power {
        #[serde(serialize_with = "crate::rat::serialize_pq", deserialize_with = "crate::rat::deserialize_pq")]
        order: Rational,
    },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::None => write!(f, "none"),
            Divergence::Log => write!(f, "log"),
            Divergence::Power { order } => write!(f, "power({order})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Localization {
    /// True when the weight of any fixed window `[a, b]`, `a > 0`, is
    /// negligible against the cut-off norm as the cutoff shrinks.
    pub localized: bool,
    pub divergence: Divergence,
}

impl Localization {
    /// Classifies from the exponent `p` of the leading small-distance
    /// density `t^p` (in the integration variable `t`).
    pub(crate) fn from_density_exponent(p: &Rational) -> Self {
        // integral_eps t^p dt diverges iff p <= -1.
        let shifted = p + Rational::from_integer(1.into());
        let divergence = if shifted < Rational::from_integer(0.into()) {
            Divergence::Power { order: -shifted }
        } else if shifted == Rational::from_integer(0.into()) {
            Divergence::Log
        } else {
            Divergence::None
        };
        Self { localized: divergence != Divergence::None, divergence }
    }

    pub fn regular() -> Self {
        Self { localized: false, divergence: Divergence::None }
    }
}
