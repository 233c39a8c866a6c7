use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::{EpsScalar, GradedScalar};

/// Laurent data in `eps` truncated after the `eps^0` term: `pole/eps + finite + O(eps)`.
///
/// `finite` is `None` when some contributing Gamma evaluation sat on a pole;
/// its finite part involves digamma values and only `finite_numeric` is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentValue {
    pub pole: GradedScalar,
    pub finite: Option<GradedScalar>,
    pub finite_numeric: Option<f64>,
}

impl LaurentValue {
    pub fn zero() -> Self {
        Self::exact(GradedScalar::zero())
    }

    pub fn exact(value: GradedScalar) -> Self {
        Self { pole: GradedScalar::zero(), finite: Some(value), finite_numeric: None }
    }

    pub fn is_zero(&self) -> bool {
        self.pole.is_zero() && self.finite.as_ref().is_some_and(GradedScalar::is_zero)
    }

    pub fn is_finite_exact(&self) -> bool {
        self.pole.is_zero() && self.finite.is_some()
    }

    /// Finite part as a float: exact value when available, else the numeric estimate.
    pub fn finite_f64(&self) -> f64 {
        match &self.finite {
            Some(v) => v.to_f64(),
            None => self.finite_numeric.unwrap_or(f64::NAN),
        }
    }

    /// Product with a polynomial in `eps`, truncated at order `eps^0`.
    pub fn mul_eps(&self, c: &EpsScalar) -> Self {
        let c0 = c.coeff(0);
        let c1 = c.coeff(1);
        let pole = &self.pole * &c0;
        let from_pole = &self.pole * &c1;
        if c0.is_zero() {
            return Self::exact(from_pole).with_pole(pole);
        }
        match &self.finite {
            Some(f) => Self { pole, finite: Some(&from_pole + &(f * &c0)), finite_numeric: None },
            None => Self {
                pole,
                finite: None,
                finite_numeric: Some(from_pole.to_f64() + self.finite_numeric.unwrap_or(f64::NAN) * c0.to_f64()),
            },
        }
    }

    fn with_pole(mut self, pole: GradedScalar) -> Self {
        self.pole = pole;
        self
    }

    pub fn scale(&self, c: &GradedScalar) -> Self {
        self.mul_eps(&EpsScalar::constant(c.clone()))
    }

    /// Multiplies by `eps`: the residue becomes the finite part.
    pub fn times_eps(&self) -> Self {
        Self::exact(self.pole.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let pole = &self.pole + &other.pole;
        match (&self.finite, &other.finite) {
            (Some(a), Some(b)) => Self { pole, finite: Some(a + b), finite_numeric: None },
            _ => Self { pole, finite: None, finite_numeric: Some(self.finite_f64() + other.finite_f64()) },
        }
    }
}

impl Serialize for LaurentValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentValue", 3)?;
        st.serialize_field("pole", &self.pole)?;
        match &self.finite {
            Some(f) => st.serialize_field("finite", f)?,
            None => st.serialize_field("finite", "unavailable")?,
        }
        st.serialize_field("finite_numeric", &self.finite_numeric)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Finite {
            Marker(String),
            Value(GradedScalar),
        }
        #[derive(Deserialize)]
        struct Repr {
            pole: GradedScalar,
            finite: Finite,
            finite_numeric: Option<f64>,
        }
        let r = Repr::deserialize(d)?;
        let finite = match r.finite {
            Finite::Value(v) => Some(v),
            Finite::Marker(m) if m == "unavailable" => None,
            Finite::Marker(m) => return Err(de::Error::custom(format!("unknown finite marker `{m}`"))),
        };
        Ok(Self { pole: r.pole, finite, finite_numeric: r.finite_numeric })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn truncated_product() {
        // (2/eps + F) * (1 + 3 eps) = 2/eps + (6 + F) + O(eps)
        let v = LaurentValue { pole: 2.into(), finite: Some(5.into()), finite_numeric: None };
        let p = v.mul_eps(&EpsScalar::affine(int(1), int(3)));
        assert_eq!(p.pole, 2.into());
        assert_eq!(p.finite, Some(11.into()));
    }

    #[test]
    fn unavailable_finite_survives_only_with_nonzero_constant() {
        let v = LaurentValue { pole: 1.into(), finite: None, finite_numeric: Some(-0.5) };
        let p = v.mul_eps(&EpsScalar::affine(int(0), int(4)));
        assert_eq!(p, LaurentValue::exact(4.into()));
        let q = v.mul_eps(&EpsScalar::affine(int(2), int(1)));
        assert_eq!(q.finite, None);
        assert_eq!(q.finite_numeric, Some(0.0));
    }

    #[test]
    fn json_shape() {
        let v = LaurentValue { pole: 1.into(), finite: None, finite_numeric: Some(0.25) };
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"{"pole":[{"j":0,"k":0,"q":"1/1"}],"finite":"unavailable","finite_numeric":0.25}"#);
        let back: LaurentValue = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
        let e = LaurentValue::exact(GradedScalar::pi());
        let back: LaurentValue = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }
}
