//! Exact scalars in Q[2^(1/2), pi^(+-1/2)].
//!
//! A [`GradedScalar`] is a finite sum `sum q_jk * 2^(j/2) * pi^(k/2)`. Since
//! `2^(j/2)` is rational for even `j`, grades are stored with `j` reduced to
//! `{0, 1}`; `pi` is transcendental, so distinct `k` are linearly independent
//! and term-wise comparison is a complete equality test.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{self, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedScalar {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl GradedScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::monomial(q, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat::int(n))
    }

    /// `q * 2^(j/2) * pi^(k/2)` with `j` normalized into `{0, 1}`.
    pub fn monomial(q: Rational, j: i32, k: i32) -> Self {
        let mut s = Self::zero();
        s.add_term(q, j, k);
        s
    }

    pub fn sqrt2() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn inv_sqrt2() -> Self {
        Self::monomial(Rational::one(), -1, 0)
    }

    pub fn sqrt_pi() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn pi() -> Self {
        Self::monomial(Rational::one(), 0, 2)
    }

    fn add_term(&mut self, mut q: Rational, j: i32, k: i32) {
        let j_red = j.rem_euclid(2);
        let shift = (j - j_red) / 2;
        if shift != 0 {
            let two = Rational::from_integer(BigInt::from(2));
            let factor = if shift > 0 {
                num_traits::pow(two, shift as usize)
            } else {
                num_traits::pow(two, (-shift) as usize).recip()
            };
            q *= factor;
        }
        if q.is_zero() {
            return;
        }
        let key = (j_red, k);
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Iterates `(j, k, q)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &Rational)> {
        self.terms.iter().map(|(&(j, k), q)| (j, k, q))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a plain rational, if it lies in grade (0, 0).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * q)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&(j, k), q)| {
                rat::to_f64(q) * 2f64.powf(j as f64 / 2.0) * std::f64::consts::PI.powf(k as f64 / 2.0)
            })
            .sum()
    }

    /// Groups the value by pi-grade into coefficients of Q(sqrt 2).
    pub(crate) fn by_pi_grade(&self) -> BTreeMap<i32, QuadRational> {
        let mut out: BTreeMap<i32, QuadRational> = BTreeMap::new();
        for (&(j, k), q) in &self.terms {
            let e = out.entry(k).or_default();
            if j == 0 {
                e.a += q;
            } else {
                e.b += q;
            }
        }
        out
    }

    fn from_pi_grades(grades: &BTreeMap<i32, QuadRational>) -> Self {
        let mut s = Self::zero();
        for (&k, c) in grades {
            s.add_term(c.a.clone(), 0, k);
            s.add_term(c.b.clone(), 1, k);
        }
        s
    }

    /// Exact quotient in the ring, when it exists.
    ///
    /// The ring is the Laurent polynomial ring over Q(sqrt 2) in `t = pi^(1/2)`,
    /// so this is Laurent long division with a zero-remainder check.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let d = divisor.by_pi_grade();
        let (&d_hi, d_lead) = d.iter().next_back()?;
        let d_lo = *d.keys().next()?;
        let lead_inv = d_lead.inv();
        let mut rem = self.by_pi_grade();
        let floor = *rem.keys().next()? - d_lo;
        let mut quot: BTreeMap<i32, QuadRational> = BTreeMap::new();
        while let Some((&top, top_c)) = rem.iter().next_back() {
            let qk = top - d_hi;
            if qk < floor {
                return None;
            }
            let c = top_c.mul(&lead_inv);
            for (&dk, dc) in &d {
                let k = dk + qk;
                let e = rem.entry(k).or_default();
                *e = e.sub(&c.mul(dc));
                if e.is_zero() {
                    rem.remove(&k);
                }
            }
            quot.insert(qk, c);
        }
        Some(Self::from_pi_grades(&quot))
    }

    pub fn parse(text: &str) -> Result<Self> {
        // Accepts the JSON term list only; human-readable output is not reparsed.
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `a + b*sqrt(2)` with rational parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct QuadRational {
    pub a: Rational,
    pub b: Rational,
}

impl QuadRational {
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        let two = rat::int(2);
        Self {
            a: &self.a * &o.a + &self.b * &o.b * two,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    fn inv(&self) -> Self {
        // (a + b r2)^-1 = (a - b r2) / (a^2 - 2 b^2); the norm is nonzero for nonzero input.
        let norm = &self.a * &self.a - &self.b * &self.b * rat::int(2);
        Self {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        }
    }

    /// Exact sign of `a + b*sqrt(2)`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 with 2 b^2.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * rat::int(2);
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn abs_f64(&self) -> f64 {
        (rat::to_f64(&self.a) + rat::to_f64(&self.b) * std::f64::consts::SQRT_2).abs()
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for GradedScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for GradedScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add<&GradedScalar> for &GradedScalar {
    type Output = GradedScalar;
    fn add(self, rhs: &GradedScalar) -> GradedScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GradedScalar {
    type Output = GradedScalar;
    fn add(mut self, rhs: GradedScalar) -> GradedScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&GradedScalar> for GradedScalar {
    fn add_assign(&mut self, rhs: &GradedScalar) {
        for (&(j, k), q) in &rhs.terms {
            self.add_term(q.clone(), j, k);
        }
    }
}

impl Sub<&GradedScalar> for &GradedScalar {
    type Output = GradedScalar;
    fn sub(self, rhs: &GradedScalar) -> GradedScalar {
        self + &(-rhs)
    }
}

impl Sub for GradedScalar {
    type Output = GradedScalar;
    fn sub(self, rhs: GradedScalar) -> GradedScalar {
        &self - &rhs
    }
}

impl Neg for &GradedScalar {
    type Output = GradedScalar;
    fn neg(self) -> GradedScalar {
        GradedScalar {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Neg for GradedScalar {
    type Output = GradedScalar;
    fn neg(self) -> GradedScalar {
        -&self
    }
}

impl Mul<&GradedScalar> for &GradedScalar {
    type Output = GradedScalar;
    fn mul(self, rhs: &GradedScalar) -> GradedScalar {
        let mut out = GradedScalar::zero();
        for (&(j1, k1), q1) in &self.terms {
            for (&(j2, k2), q2) in &rhs.terms {
                out.add_term(q1 * q2, j1 + j2, k1 + k2);
            }
        }
        out
    }
}

impl Mul for GradedScalar {
    type Output = GradedScalar;
    fn mul(self, rhs: GradedScalar) -> GradedScalar {
        &self * &rhs
    }
}

fn fmt_pi(k: i32) -> String {
    if k % 2 == 0 {
        match k / 2 {
            1 => "pi".to_string(),
            m => format!("pi^{m}"),
        }
    } else {
        format!("pi^({k}/2)")
    }
}

fn fmt_term(q: &Rational, j: i32, k: i32) -> String {
    let mut s = q.to_string();
    if j == 1 {
        s.push_str("*2^(1/2)");
    }
    if k != 0 {
        s.push('*');
        s.push_str(&fmt_pi(k));
    }
    s
}

impl fmt::Display for GradedScalar {
    /// Human-readable form, e.g. `-1*pi^(1/2)` or `3/4*pi^(1/2) + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Rational part first, then increasing pi-grade.
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(j, k), _)| (k != 0, k, j));
        for (i, (&(j, k), q)) in ordered.into_iter().enumerate() {
            if i == 0 {
                write!(f, "{}", fmt_term(q, j, k))?;
            } else if q.is_negative() {
                write!(f, " - {}", fmt_term(&-q, j, k))?;
            } else {
                write!(f, " + {}", fmt_term(q, j, k))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    j: i32,
    k: i32,
    #[serde(serialize_with = "rat::serialize_pq", deserialize_with = "rat::deserialize_pq")]
    q: Rational,
}

impl Serialize for GradedScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(j, k), q)| TermRepr { j, k, q: q.clone() })
            .collect();
        reprs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(d)?;
        let mut s = GradedScalar::zero();
        for t in reprs {
            s.add_term(t.q, t.j, t.k);
        }
        Ok(s)
    }
}

/// Shorthand used heavily in tests and constructions.
pub fn gs(n: i64, d: i64) -> GradedScalar {
    GradedScalar::from_rational(BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_root_two_grades_fold_into_rationals() {
        let two = GradedScalar::sqrt2() * GradedScalar::sqrt2();
        assert_eq!(two, GradedScalar::from_int(2));
        assert_eq!(GradedScalar::sqrt2() * GradedScalar::inv_sqrt2(), GradedScalar::one());
        assert_eq!(GradedScalar::monomial(rat::int(3), -2, 0), gs(3, 2));
    }

    #[test]
    fn display_matches_report_format() {
        assert_eq!((-GradedScalar::sqrt_pi()).to_string(), "-1*pi^(1/2)");
        assert_eq!(GradedScalar::monomial(rat::rat(4, 3), 0, 3).to_string(), "4/3*pi^(3/2)");
        assert_eq!(GradedScalar::pi().to_string(), "1*pi");
        assert_eq!(GradedScalar::zero().to_string(), "0");
        let mixed = GradedScalar::from_int(1) - GradedScalar::sqrt_pi().scale(&rat::int(2));
        assert_eq!(mixed.to_string(), "1 - 2*pi^(1/2)");
    }

    #[test]
    fn division_exact_and_inexact() {
        let a = GradedScalar::sqrt_pi() + GradedScalar::sqrt2();
        let b = GradedScalar::pi() - gs(3, 1);
        let p = &a * &b;
        assert_eq!(p.checked_div(&a).unwrap(), b);
        assert_eq!(p.checked_div(&b).unwrap(), a);
        // 1 / (1 + sqrt(pi)) is not a Laurent polynomial in sqrt(pi).
        let c = GradedScalar::one() + GradedScalar::sqrt_pi();
        assert!(GradedScalar::one().checked_div(&c).is_none());
        assert!(a.checked_div(&GradedScalar::zero()).is_none());
        // Units: q*(a + b r2)*pi^k always invert.
        let u = (gs(1, 1) + GradedScalar::sqrt2()) * GradedScalar::pi();
        assert_eq!((&u * &a).checked_div(&u).unwrap(), a);
    }

    #[test]
    fn json_encoding() {
        let v = -GradedScalar::sqrt_pi();
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"[{"j":0,"k":1,"q":"-1/1"}]"#);
        let back: GradedScalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
        // Non-normalized grades are folded on input.
        let w: GradedScalar = serde_json::from_str(r#"[{"j":2,"k":0,"q":"1/2"}]"#).unwrap();
        assert_eq!(w, GradedScalar::one());
    }

    #[test]
    fn quad_sign() {
        let q = |a: i64, b: i64| QuadRational { a: rat::int(a), b: rat::int(b) };
        assert_eq!(q(3, -2).signum(), 1); // 3 - 2.83
        assert_eq!(q(2, -2).signum(), -1);
        assert_eq!(q(0, 0).signum(), 0);
        assert_eq!(q(-1, 1).signum(), 1);
    }
}
