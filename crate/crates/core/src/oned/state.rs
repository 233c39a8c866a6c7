use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rational};
use crate::scalar::GradedScalar;

/// A half-line state `sum c_e * x^e * exp(-x^2/2)`.
///
/// Exponents are rational (negative allowed). The Gaussian weight is implicit.
/// `label` records provenance only and is ignored by equality.
#[derive(Clone, Debug, Default)]
pub struct State1D {
    terms: BTreeMap<Rational, GradedScalar>,
    pub label: Option<String>,
}

impl PartialEq for State1D {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for State1D {}

impl State1D {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * x^e * w`.
    pub fn monomial(e: Rational, c: GradedScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(e, c);
        s
    }

    /// `x^e * w`.
    pub fn power(e: Rational) -> Self {
        Self::monomial(e, GradedScalar::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, GradedScalar)>) -> Self {
        let mut s = Self::zero();
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn add_term(&mut self, e: Rational, c: GradedScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &GradedScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Rational) -> GradedScalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Rational> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GradedScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &GradedScalar) -> Self {
        let mut out = Self { terms: BTreeMap::new(), label: self.label.clone() };
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: &Rational) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
            label: self.label.clone(),
        }
    }

    /// Point value `psi(x)` including the Gaussian weight.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let w = (-x * x / 2.0).exp();
        self.terms.iter().map(|(e, c)| c.to_f64() * x.powf(rat::to_f64(e))).sum::<f64>() * w
    }
}

/// Scalar `c` with `a = c * b`, if the two states are proportional.
pub fn proportionality(a: &State1D, b: &State1D) -> Option<GradedScalar> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(GradedScalar::zero());
    }
    let (e, bc) = b.terms.iter().next()?;
    let c = a.coeff(e).checked_div(bc)?;
    (b.scale(&c) == *a).then_some(c)
}

impl fmt::Display for State1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = if c.len() > 1 { format!("({c})") } else { c.to_string() };
                format!("{coeff}*x^({e})")
            })
            .collect();
        write!(f, "({})*w", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(serialize_with = "rat::serialize_pq", deserialize_with = "rat::deserialize_pq")]
    exp: Rational,
    coeff: GradedScalar,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    space: String,
    terms: Vec<TermRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for State1D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateRepr {
            space: "1d".into(),
            terms: self.terms.iter().map(|(e, c)| TermRepr { exp: e.clone(), coeff: c.clone() }).collect(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for State1D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = StateRepr::deserialize(d)?;
        if r.space != "1d" {
            return Err(serde::de::Error::custom(format!("expected space \"1d\", got {:?}", r.space)));
        }
        let mut s = State1D::from_terms(r.terms.into_iter().map(|t| (t.exp, t.coeff)));
        s.label = r.label;
        Ok(s)
    }
}

impl State1D {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn cancellation_removes_terms() {
        let a = State1D::power(int(2));
        let b = a.scale(&GradedScalar::from_int(-1));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn proportional_states() {
        let a = State1D::from_terms([(int(-1), 1.into()), (int(1), 2.into())]);
        let c = GradedScalar::sqrt_pi();
        assert_eq!(proportionality(&a.scale(&c), &a), Some(c));
        let b = State1D::from_terms([(int(-1), 1.into()), (int(1), 3.into())]);
        assert_eq!(proportionality(&b, &a), None);
    }

    #[test]
    fn json_format() {
        let s = State1D::monomial(rat(-1, 2), GradedScalar::from_int(3));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"space":"1d","terms":[{"exp":"-1/2","coeff":[{"j":0,"k":0,"q":"3/1"}]}]}"#);
        assert_eq!(State1D::from_json(&j).unwrap(), s);
        assert!(State1D::from_json(r#"{"space":"2d","terms":[]}"#).is_err());
    }
}
