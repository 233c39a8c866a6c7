use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rational};
use crate::scalar::{EpsAffine, EpsScalar, GradedScalar};

/// Exponents of `zbar^(lam + lam_slope*eps) * z^(mu + mu_slope*eps)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoExp {
    pub lam: Rational,
    pub lam_slope: i32,
    pub mu: Rational,
    pub mu_slope: i32,
}

impl MonoExp {
    pub fn new(lam: Rational, mu: Rational) -> Self {
        Self { lam, lam_slope: 0, mu, mu_slope: 0 }
    }

    pub fn with_slopes(lam: Rational, lam_slope: i32, mu: Rational, mu_slope: i32) -> Self {
        Self { lam, lam_slope, mu, mu_slope }
    }

    /// `-lam + mu`, affine in eps.
    pub fn charge(&self) -> EpsAffine {
        EpsAffine::new(&self.mu - &self.lam, Rational::from_integer((self.mu_slope - self.lam_slope).into()))
    }

    /// `lam + mu`, the radial degree.
    pub fn degree(&self) -> EpsAffine {
        EpsAffine::new(&self.lam + &self.mu, Rational::from_integer((self.lam_slope + self.mu_slope).into()))
    }

    pub fn has_slope(&self) -> bool {
        self.lam_slope != 0 || self.mu_slope != 0
    }

    pub(crate) fn shifted(&self, dlam: &Rational, dmu: &Rational) -> Self {
        Self {
            lam: &self.lam + dlam,
            lam_slope: self.lam_slope,
            mu: &self.mu + dmu,
            mu_slope: self.mu_slope,
        }
    }

    /// `lam` as a polynomial in eps.
    pub fn lam_eps(&self) -> EpsScalar {
        EpsScalar::affine(self.lam.clone(), Rational::from_integer(self.lam_slope.into()))
    }

    pub fn mu_eps(&self) -> EpsScalar {
        EpsScalar::affine(self.mu.clone(), Rational::from_integer(self.mu_slope.into()))
    }

    fn check_slopes(&self) -> Result<()> {
        for s in [self.lam_slope, self.mu_slope] {
            if !(0..=1).contains(&s) {
                return Err(Error::Domain(format!("eps-slopes are limited to 0 or 1, got {s}")));
            }
        }
        Ok(())
    }
}

/// Power of `eps` multiplying a state under the renormalization `psi -> sqrt(eps) psi`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Renorm {
    #[default]
    None,
    Half,
}

impl Renorm {
    pub fn as_str(self) -> &'static str {
        match self {
            Renorm::None => "0",
            Renorm::Half => "1/2",
        }
    }

    /// Twice the power, so that sums stay integral.
    pub fn doubled(self) -> u32 {
        match self {
            Renorm::None => 0,
            Renorm::Half => 1,
        }
    }
}

/// Two-dimensional state `eps^renorm * sum c(eps) * zbar^lam z^mu exp(-zbar z / 2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct State2D {
    terms: BTreeMap<MonoExp, EpsScalar>,
    pub renorm: Renorm,
}

impl State2D {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn zero_like(&self) -> Self {
        Self { terms: BTreeMap::new(), renorm: self.renorm }
    }

    pub fn monomial(exp: MonoExp, c: EpsScalar) -> Self {
        let mut s = Self::zero();
        s.add_term(exp, c);
        s
    }

    pub fn with_renorm(mut self, renorm: Renorm) -> Self {
        self.renorm = renorm;
        self
    }

    pub fn add_term(&mut self, exp: MonoExp, c: EpsScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.clone()).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoExp, &EpsScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &MonoExp) -> EpsScalar {
        self.terms.get(exp).cloned().unwrap_or_default()
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

    pub fn has_slopes(&self) -> bool {
        self.terms.keys().any(MonoExp::has_slope)
    }

    /// Sum of two states with the same renormalization power.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.renorm != other.renorm && !self.is_zero() && !other.is_zero() {
            return Err(Error::Domain("cannot add states with different renormalization powers".into()));
        }
        let mut out = if self.is_zero() { other.zero_like() } else { self.zero_like() };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &EpsScalar) -> Self {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &GradedScalar) -> Self {
        self.scale(&EpsScalar::constant(c.clone()))
    }

    /// Distinct eps-affine charges carried by the terms.
    pub fn charges(&self) -> Vec<EpsAffine> {
        let mut v: Vec<EpsAffine> = self.terms.keys().map(MonoExp::charge).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Sets `eps = 0`: exponents lose their slopes, coefficients are evaluated.
    pub fn limit_at_zero(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(MonoExp::new(e.lam.clone(), e.mu.clone()), EpsScalar::constant(c.at_zero()));
        }
        out
    }

    /// Complex point value at `z = r e^(i phi)`, principal branch for fractional
    /// powers, with `eps` set to `eps_value`.
    pub fn eval_polar(&self, r: f64, phi: f64, eps_value: f64) -> (f64, f64) {
        let w = (-r * r / 2.0).exp();
        let (mut re, mut im) = (0.0, 0.0);
        for (e, c) in &self.terms {
            let lam = rat::to_f64(&e.lam) + e.lam_slope as f64 * eps_value;
            let mu = rat::to_f64(&e.mu) + e.mu_slope as f64 * eps_value;
            let mag = c.eval_f64(eps_value) * r.powf(lam + mu) * w;
            let angle = (mu - lam) * phi;
            re += mag * angle.cos();
            im += mag * angle.sin();
        }
        (re, im)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `Omega_{lam mu} = zbar^lam z^mu exp(-zbar z / 2)` with optional eps-slopes.
pub fn omega(lam: Rational, mu: Rational, lam_slope: i32, mu_slope: i32) -> Result<State2D> {
    let exp = MonoExp::with_slopes(lam, lam_slope, mu, mu_slope);
    exp.check_slopes()?;
    Ok(State2D::monomial(exp, EpsScalar::one()))
}

/// The ordinary vacuum `exp(-zbar z / 2)`.
pub fn psi0() -> State2D {
    State2D::monomial(MonoExp::new(Rational::zero(), Rational::zero()), EpsScalar::one())
}

/// Scalar `c(eps)` with `a = c * b`, if the states are proportional.
pub fn proportionality_2d(a: &State2D, b: &State2D) -> Option<EpsScalar> {
    let (e, bc) = b.terms.iter().next()?;
    if a.is_zero() {
        return Some(EpsScalar::zero());
    }
    let c = a.coeff(e).checked_div(bc)?;
    let scaled = b.scale(&c);
    (scaled.terms == a.terms).then_some(c)
}

impl fmt::Display for State2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.renorm == Renorm::Half {
            write!(f, "eps^(1/2)*")?;
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let n_terms: usize = c.coeffs().iter().map(GradedScalar::len).sum();
                let coeff = if n_terms > 1 { format!("({c})") } else { c.to_string() };
                let lam = EpsAffine::new(e.lam.clone(), Rational::from_integer(e.lam_slope.into()));
                let mu = EpsAffine::new(e.mu.clone(), Rational::from_integer(e.mu_slope.into()));
                format!("{coeff}*Omega[{lam}, {mu}]")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(serialize_with = "rat::serialize_pq", deserialize_with = "rat::deserialize_pq")]
    lam: Rational,
    lam_slope: i32,
    #[serde(serialize_with = "rat::serialize_pq", deserialize_with = "rat::deserialize_pq")]
    mu: Rational,
    mu_slope: i32,
    coeff: EpsScalar,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    space: String,
    renorm: String,
    terms: Vec<TermRepr>,
}

impl Serialize for State2D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StateRepr {
            space: "2d".into(),
            renorm: self.renorm.as_str().into(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    lam: e.lam.clone(),
                    lam_slope: e.lam_slope,
                    mu: e.mu.clone(),
                    mu_slope: e.mu_slope,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for State2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = StateRepr::deserialize(d)?;
        if r.space != "2d" {
            return Err(D::Error::custom(format!("expected space \"2d\", got {:?}", r.space)));
        }
        let renorm = match r.renorm.as_str() {
            "0" | "0/1" => Renorm::None,
            "1/2" => Renorm::Half,
            other => return Err(D::Error::custom(format!("renorm must be \"0\" or \"1/2\", got {other:?}"))),
        };
        let mut s = State2D::zero().with_renorm(renorm);
        for t in r.terms {
            let exp = MonoExp::with_slopes(t.lam, t.lam_slope, t.mu, t.mu_slope);
            exp.check_slopes().map_err(D::Error::custom)?;
            s.add_term(exp, t.coeff);
        }
        Ok(s)
    }
}
