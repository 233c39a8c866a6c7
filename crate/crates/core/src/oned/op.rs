use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::State1D;
use crate::error::{Error, Result};
use crate::rat::{self, int, Rational};
use crate::scalar::{gs, GradedScalar};

/// Normal-ordered differential operator `sum c * x^p * D^q` on the half-line,
/// with `D = d/dx`, every power of `x` to the left of every derivative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOp1D {
    terms: BTreeMap<(Rational, u32), GradedScalar>,
}

impl DiffOp1D {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(GradedScalar::one())
    }

    pub fn scalar(c: GradedScalar) -> Self {
        Self::term(c, int(0), 0)
    }

    /// `c * x^p * D^q`.
    pub fn term(c: GradedScalar, p: Rational, q: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(p, q, c);
        op
    }

    pub fn x() -> Self {
        Self::term(GradedScalar::one(), int(1), 0)
    }

    pub fn d() -> Self {
        Self::term(GradedScalar::one(), int(0), 1)
    }

    pub fn add_term(&mut self, p: Rational, q: u32, c: GradedScalar) {
        if c.is_zero() {
            return;
        }
        let key = (p, q);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, u32, &GradedScalar)> {
        self.terms.iter().map(|((p, q), c)| (p, *q, c))
    }

    pub fn coeff(&self, p: &Rational, q: u32) -> GradedScalar {
        self.terms.get(&(p.clone(), q)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, q), c) in &other.terms {
            out.add_term(p.clone(), *q, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GradedScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &GradedScalar) -> Self {
        let mut out = Self::zero();
        for ((p, q), v) in &self.terms {
            out.add_term(p.clone(), *q, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| compose_1d(&acc, self))
    }
}

/// Operator vocabulary of the half-line problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op1DName {
    H1,
    APlus,
    AMinus,
    LadderUp,
    LadderDown,
    X,
    D,
}

impl FromStr for Op1DName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H1" => Op1DName::H1,
            "a_plus" | "a+" => Op1DName::APlus,
            "a_minus" | "a-" => Op1DName::AMinus,
            "A_plus" | "A+" => Op1DName::LadderUp,
            "A_minus" | "A-" => Op1DName::LadderDown,
            "X" | "x" => Op1DName::X,
            "D" => Op1DName::D,
            other => return Err(Error::Parse(format!("unknown 1d operator `{other}`"))),
        })
    }
}

/// Builds the named operator in normal order.
///
/// `H1 = 1/2 (-D^2 + x^2 + 2 x^-2)`, `a+-_alpha = 2^-1/2 (-+D + x + alpha x^-1)`,
/// `A+ = 1/2 (D^2 + x^2 - 2x^-2 - 2xD - 1)`, `A- = 1/2 (D^2 + x^2 - 2x^-2 + 2xD + 1)`.
pub fn build_op_1d(name: Op1DName, alpha: Option<&Rational>) -> Result<DiffOp1D> {
    let t = |c: GradedScalar, p: i64, q: u32| DiffOp1D::term(c, int(p), q);
    let op = match name {
        Op1DName::H1 => t(gs(-1, 2), 0, 2).add(&t(gs(1, 2), 2, 0)).add(&t(gs(1, 1), -2, 0)),
        Op1DName::APlus | Op1DName::AMinus => {
            let alpha = alpha.ok_or(Error::MissingParameter("alpha"))?;
            let d_sign = if name == Op1DName::APlus { -1 } else { 1 };
            let k = GradedScalar::inv_sqrt2();
            t(gs(d_sign, 1), 0, 1)
                .add(&t(gs(1, 1), 1, 0))
                .add(&DiffOp1D::term(GradedScalar::from_rational(alpha.clone()), int(-1), 0))
                .scale(&k)
        }
        Op1DName::LadderUp | Op1DName::LadderDown => {
            let s = if name == Op1DName::LadderUp { -1 } else { 1 };
            t(gs(1, 2), 0, 2)
                .add(&t(gs(1, 2), 2, 0))
                .add(&t(gs(-1, 1), -2, 0))
                .add(&t(gs(s, 1), 1, 1))
                .add(&t(gs(s, 2), 0, 0))
        }
        Op1DName::X => DiffOp1D::x(),
        Op1DName::D => DiffOp1D::d(),
    };
    Ok(op)
}

/// Applies `D` once: `D[x^e w] = (e x^(e-1) - x^(e+1)) w`.
fn differentiate(s: &State1D) -> State1D {
    let mut out = State1D::zero();
    for (e, c) in s.terms() {
        out.add_term(e - int(1), c.scale(e));
        out.add_term(e + int(1), -c);
    }
    out
}

pub fn apply_1d(op: &DiffOp1D, s: &State1D) -> State1D {
    let max_q = op.terms.keys().map(|(_, q)| *q).max().unwrap_or(0);
    let mut derivs = vec![s.clone()];
    for _ in 0..max_q {
        let next = differentiate(derivs.last().expect("non-empty"));
        derivs.push(next);
    }
    let mut out = State1D::zero();
    for ((p, q), c) in &op.terms {
        for (e, v) in derivs[*q as usize].terms() {
            out.add_term(e + p, v * c);
        }
    }
    out.label = None;
    out
}

/// Normal-ordered product `f . g`, using
/// `D^q x^p = sum_j C(q, j) (p)_j x^(p-j) D^(q-j)` with the falling factorial.
pub fn compose_1d(f: &DiffOp1D, g: &DiffOp1D) -> DiffOp1D {
    let mut out = DiffOp1D::zero();
    for ((p1, q1), c1) in &f.terms {
        for ((p2, q2), c2) in &g.terms {
            let c = c1 * c2;
            for j in 0..=*q1 {
                let k = rat::binomial(*q1, j) * rat::falling_factorial(p2, j);
                if k == int(0) {
                    continue;
                }
                out.add_term(p1 + p2 - int(j as i64), q1 - j + q2, c.scale(&k));
            }
        }
    }
    out
}

pub fn commutator_1d(f: &DiffOp1D, g: &DiffOp1D) -> DiffOp1D {
    compose_1d(f, g).sub(&compose_1d(g, f))
}

impl fmt::Display for DiffOp1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, q), c)| {
                let coeff = if c.len() > 1 { format!("({c})") } else { c.to_string() };
                let mut s = coeff;
                if *p != int(0) {
                    s.push_str(&format!("*x^({p})"));
                }
                if *q > 0 {
                    s.push_str(&format!("*D^{q}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    #[serde(serialize_with = "rat::serialize_pq", deserialize_with = "rat::deserialize_pq")]
    exp: Rational,
    dorder: u32,
    coeff: GradedScalar,
}

#[derive(Serialize, Deserialize)]
struct OpRepr {
    space: String,
    terms: Vec<TermRepr>,
}

impl Serialize for DiffOp1D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OpRepr {
            space: "1d".into(),
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| TermRepr { exp: p.clone(), dorder: *q, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOp1D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = OpRepr::deserialize(d)?;
        if r.space != "1d" {
            return Err(serde::de::Error::custom("expected space \"1d\""));
        }
        let mut op = DiffOp1D::zero();
        for t in r.terms {
            op.add_term(t.exp, t.dorder, t.coeff);
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn op(name: Op1DName) -> DiffOp1D {
        build_op_1d(name, None).unwrap()
    }

    fn a(name: Op1DName, alpha: i64) -> DiffOp1D {
        build_op_1d(name, Some(&int(alpha))).unwrap()
    }

    #[test]
    fn ladder_up_expanded_form() {
        let expected = DiffOp1D::term(gs(1, 2), int(0), 2)
            .add(&DiffOp1D::term(gs(-1, 1), int(1), 1))
            .add(&DiffOp1D::term(gs(1, 2), int(2), 0))
            .add(&DiffOp1D::term(gs(-1, 1), int(-2), 0))
            .add(&DiffOp1D::term(gs(-1, 2), int(0), 0));
        assert_eq!(op(Op1DName::LadderUp), expected);
    }

    #[test]
    fn annihilator_alpha_one() {
        let k = GradedScalar::inv_sqrt2();
        let expected = DiffOp1D::d().add(&DiffOp1D::x()).add(&DiffOp1D::term(gs(1, 1), int(-1), 0)).scale(&k);
        assert_eq!(a(Op1DName::AMinus, 1), expected);
        assert_eq!(build_op_1d(Op1DName::APlus, None), Err(Error::MissingParameter("alpha")));
    }

    #[test]
    fn compose_examples() {
        let xd = DiffOp1D::term(gs(1, 1), int(1), 1);
        assert_eq!(compose_1d(&DiffOp1D::d(), &DiffOp1D::x()), xd.add(&DiffOp1D::identity()));
        let xinv = DiffOp1D::term(gs(1, 1), int(-1), 0);
        let expected = DiffOp1D::term(gs(1, 1), int(-1), 1).add(&DiffOp1D::term(gs(-1, 1), int(-2), 0));
        assert_eq!(compose_1d(&DiffOp1D::d(), &xinv), expected);
    }

    #[test]
    fn factorization_at_alpha_one() {
        let lhs = compose_1d(&a(Op1DName::APlus, 1), &a(Op1DName::AMinus, 1))
            .add(&DiffOp1D::scalar(gs(-1, 2)));
        assert_eq!(lhs, op(Op1DName::H1));
    }

    #[test]
    fn commutators() {
        let h = op(Op1DName::H1);
        let up = op(Op1DName::LadderUp);
        let down = op(Op1DName::LadderDown);
        assert_eq!(commutator_1d(&up, &h), up.scale(&gs(-2, 1)));
        assert_eq!(commutator_1d(&down, &h), down.scale(&gs(2, 1)));
        assert!(commutator_1d(&DiffOp1D::x(), &DiffOp1D::x()).is_zero());
    }

    #[test]
    fn apply_examples() {
        let w_inv = State1D::power(int(-1));
        let d_img = apply_1d(&DiffOp1D::d(), &w_inv);
        assert_eq!(d_img, State1D::from_terms([(int(-2), gs(-1, 1)), (int(0), gs(-1, 1))]));
        let up = apply_1d(&op(Op1DName::LadderUp), &w_inv);
        assert_eq!(up, State1D::from_terms([(int(-1), gs(1, 1)), (int(1), gs(2, 1))]));
        let h = apply_1d(&op(Op1DName::H1), &State1D::power(int(2)));
        assert_eq!(h, State1D::monomial(int(2), gs(5, 2)));
        // Rational exponents pass straight through.
        let frac = apply_1d(&DiffOp1D::d(), &State1D::power(rat(1, 3)));
        assert_eq!(frac.coeff(&rat(-2, 3)), GradedScalar::from_rational(rat(1, 3)));
    }

    #[test]
    fn json_round_trip() {
        let h = op(Op1DName::H1);
        let j = serde_json::to_string(&h).unwrap();
        assert!(j.contains("\"dorder\":2"));
        let back: DiffOp1D = serde_json::from_str(&j).unwrap();
        assert_eq!(back, h);
    }
}
