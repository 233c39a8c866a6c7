use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MonoExp, State2D};
use crate::error::{Error, Result};
use crate::rat::{self, int, Rational};
use crate::scalar::{gs, EpsScalar, GradedScalar};

/// Exponent/order key of one operator term `zbar^p z^q dzbar^r dz^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpKey {
    pub zbar: Rational,
    pub z: Rational,
    pub dzbar: u32,
    pub dz: u32,
}

/// Normal-ordered operator `sum c * zbar^p z^q dzbar^r dz^s`.
///
/// Derivatives follow the doubled Wirtinger convention
/// `[dz, z] = [dzbar, zbar] = 2`, with mixed commutators zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOp2D {
    terms: BTreeMap<OpKey, GradedScalar>,
}

impl DiffOp2D {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(GradedScalar::one())
    }

    pub fn scalar(c: GradedScalar) -> Self {
        Self::term(c, int(0), int(0), 0, 0)
    }

    pub fn term(c: GradedScalar, zbar: Rational, z: Rational, dzbar: u32, dz: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(OpKey { zbar, z, dzbar, dz }, c);
        op
    }

    pub fn add_term(&mut self, key: OpKey, c: GradedScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &GradedScalar)> {
        self.terms.iter()
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&GradedScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &GradedScalar) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| compose_2d(&acc, self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op2DName {
    H,
    Q,
    /// `b+_+`, creates a particle of charge +1.
    #[serde(rename = "b_pp")]
    BPlusPlus,
    /// `b-_+`
    #[serde(rename = "b_mp")]
    BMinusPlus,
    /// `b+_-`, creates a particle of charge -1.
    #[serde(rename = "b_pm")]
    BPlusMinus,
    /// `b-_-`
    #[serde(rename = "b_mm")]
    BMinusMinus,
    Z,
    Zbar,
    Dz,
    Dzbar,
}

impl Op2DName {
    pub const LADDER: [Op2DName; 4] =
        [Op2DName::BPlusPlus, Op2DName::BPlusMinus, Op2DName::BMinusPlus, Op2DName::BMinusMinus];

    /// Short symbol used in reports and the operator language.
    pub fn symbol(self) -> &'static str {
        match self {
            Op2DName::H => "H",
            Op2DName::Q => "Q",
            Op2DName::BPlusPlus => "b++",
            Op2DName::BMinusPlus => "b-+",
            Op2DName::BPlusMinus => "b+-",
            Op2DName::BMinusMinus => "b--",
            Op2DName::Z => "z",
            Op2DName::Zbar => "zbar",
            Op2DName::Dz => "dz",
            Op2DName::Dzbar => "dzbar",
        }
    }
}

impl fmt::Display for Op2DName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Op2DName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "H" => Op2DName::H,
            "Q" => Op2DName::Q,
            "b_pp" | "b++" => Op2DName::BPlusPlus,
            "b_mp" | "b-+" => Op2DName::BMinusPlus,
            "b_pm" | "b+-" => Op2DName::BPlusMinus,
            "b_mm" | "b--" => Op2DName::BMinusMinus,
            "Z" | "z" => Op2DName::Z,
            "ZBAR" | "zbar" => Op2DName::Zbar,
            "DZ" | "dz" => Op2DName::Dz,
            "DZBAR" | "dzbar" => Op2DName::Dzbar,
            other => return Err(Error::Parse(format!("unknown 2d operator `{other}`"))),
        })
    }
}

/// Builds the named operator from its differential form.
///
/// `H = 1/2 (-dz dzbar + zbar z)`, `Q = 1/2 (-zbar dzbar + z dz)`,
/// `b++ = 1/2 (-dzbar + z)`, `b-+ = 1/2 (dz + zbar)`,
/// `b+- = 1/2 (-dz + zbar)`, `b-- = 1/2 (dzbar + z)`.
pub fn build_op_2d(name: Op2DName) -> DiffOp2D {
    let t = |n: i64, d: i64, zb: i64, z: i64, dzb: u32, dz: u32| DiffOp2D::term(gs(n, d), int(zb), int(z), dzb, dz);
    match name {
        Op2DName::H => t(-1, 2, 0, 0, 1, 1).add(&t(1, 2, 1, 1, 0, 0)),
        Op2DName::Q => t(-1, 2, 1, 0, 1, 0).add(&t(1, 2, 0, 1, 0, 1)),
        Op2DName::BPlusPlus => t(-1, 2, 0, 0, 1, 0).add(&t(1, 2, 0, 1, 0, 0)),
        Op2DName::BMinusPlus => t(1, 2, 0, 0, 0, 1).add(&t(1, 2, 1, 0, 0, 0)),
        Op2DName::BPlusMinus => t(-1, 2, 0, 0, 0, 1).add(&t(1, 2, 1, 0, 0, 0)),
        Op2DName::BMinusMinus => t(1, 2, 0, 0, 1, 0).add(&t(1, 2, 0, 1, 0, 0)),
        Op2DName::Z => t(1, 1, 0, 1, 0, 0),
        Op2DName::Zbar => t(1, 1, 1, 0, 0, 0),
        Op2DName::Dz => t(1, 1, 0, 0, 0, 1),
        Op2DName::Dzbar => t(1, 1, 0, 0, 1, 0),
    }
}

/// `dz [zbar^L z^M w] = 2M zbar^L z^(M-1) w - zbar^(L+1) z^M w`, `w = exp(-zbar z/2)`.
fn d_z(s: &State2D) -> State2D {
    let mut out = s.zero_like();
    for (e, c) in s.terms() {
        out.add_term(e.shifted(&int(0), &int(-1)), c * &e.mu_eps().scale(&gs(2, 1)));
        out.add_term(e.shifted(&int(1), &int(0)), -c);
    }
    out
}

fn d_zbar(s: &State2D) -> State2D {
    let mut out = s.zero_like();
    for (e, c) in s.terms() {
        out.add_term(e.shifted(&int(-1), &int(0)), c * &e.lam_eps().scale(&gs(2, 1)));
        out.add_term(e.shifted(&int(0), &int(1)), -c);
    }
    out
}

pub fn apply_2d(op: &DiffOp2D, s: &State2D) -> State2D {
    let mut out = s.zero_like();
    // Cache dz^b dzbar^a s by (a, b).
    let mut cache: BTreeMap<(u32, u32), State2D> = BTreeMap::new();
    cache.insert((0, 0), s.clone());
    for (key, c) in &op.terms {
        let image = derivative(&mut cache, key.dzbar, key.dz);
        let c = EpsScalar::constant(c.clone());
        for (e, v) in image.terms() {
            out.add_term(e.shifted(&key.zbar, &key.z), v * &c);
        }
    }
    out
}

fn derivative(cache: &mut BTreeMap<(u32, u32), State2D>, a: u32, b: u32) -> State2D {
    if let Some(s) = cache.get(&(a, b)) {
        return s.clone();
    }
    let s = if b > 0 { d_z(&derivative(cache, a, b - 1)) } else { d_zbar(&derivative(cache, a - 1, 0)) };
    cache.insert((a, b), s.clone());
    s
}

/// Normal-ordered product `f . g`. Moving `dzbar^r` past `zbar^p` uses
/// `sum_i C(r, i) 2^i (p)_i zbar^(p-i) dzbar^(r-i)`, and likewise for `z`.
pub fn compose_2d(f: &DiffOp2D, g: &DiffOp2D) -> DiffOp2D {
    let mut out = DiffOp2D::zero();
    for (k1, c1) in &f.terms {
        for (k2, c2) in &g.terms {
            let c = c1 * c2;
            for i in 0..=k1.dzbar {
                let a = commute_factor(k1.dzbar, i, &k2.zbar);
                if a == int(0) {
                    continue;
                }
                for j in 0..=k1.dz {
                    let b = commute_factor(k1.dz, j, &k2.z);
                    if b == int(0) {
                        continue;
                    }
                    let key = OpKey {
                        zbar: &k1.zbar + &k2.zbar - int(i as i64),
                        z: &k1.z + &k2.z - int(j as i64),
                        dzbar: k1.dzbar - i + k2.dzbar,
                        dz: k1.dz - j + k2.dz,
                    };
                    out.add_term(key, c.scale(&(&a * &b)));
                }
            }
        }
    }
    out
}

fn commute_factor(order: u32, j: u32, p: &Rational) -> Rational {
    rat::binomial(order, j) * rat::falling_factorial(p, j) * num_traits::pow(int(2), j as usize)
}

pub fn commutator_2d(f: &DiffOp2D, g: &DiffOp2D) -> DiffOp2D {
    compose_2d(f, g).sub(&compose_2d(g, f))
}

/// Applies a sequence of operators right-to-left, as written: `ops[0] ops[1] ... s`.
pub fn apply_chain(ops: &[&DiffOp2D], s: &State2D) -> State2D {
    ops.iter().rev().fold(s.clone(), |acc, op| apply_2d(op, &acc))
}

impl fmt::Display for DiffOp2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s = if c.len() > 1 { format!("({c})") } else { c.to_string() };
                if k.zbar != int(0) {
                    s.push_str(&format!("*zbar^({})", k.zbar));
                }
                if k.z != int(0) {
                    s.push_str(&format!("*z^({})", k.z));
                }
                if k.dzbar > 0 {
                    s.push_str(&format!("*dzbar^{}", k.dzbar));
                }
                if k.dz > 0 {
                    s.push_str(&format!("*dz^{}", k.dz));
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
    zbar: Rational,
    #[serde(serialize_with = "rat::serialize_pq", deserialize_with = "rat::deserialize_pq")]
    z: Rational,
    dzbar: u32,
    dz: u32,
    coeff: GradedScalar,
}

#[derive(Serialize, Deserialize)]
struct OpRepr {
    space: String,
    terms: Vec<TermRepr>,
}

impl Serialize for DiffOp2D {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OpRepr {
            space: "2d".into(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermRepr {
                    zbar: k.zbar.clone(),
                    z: k.z.clone(),
                    dzbar: k.dzbar,
                    dz: k.dz,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOp2D {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = OpRepr::deserialize(d)?;
        if r.space != "2d" {
            return Err(serde::de::Error::custom("expected space \"2d\""));
        }
        let mut op = DiffOp2D::zero();
        for t in r.terms {
            op.add_term(OpKey { zbar: t.zbar, z: t.z, dzbar: t.dzbar, dz: t.dz }, t.coeff);
        }
        Ok(op)
    }
}

/// Monomial image helper for tests and oracles: `op` applied to `Omega_{lam mu}`.
pub fn apply_to_omega(op: &DiffOp2D, lam: Rational, mu: Rational) -> State2D {
    apply_2d(op, &State2D::monomial(MonoExp::new(lam, mu), EpsScalar::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::twod::{omega, psi0};

    fn b(name: Op2DName) -> DiffOp2D {
        build_op_2d(name)
    }

    #[test]
    fn builder_examples() {
        let expected = DiffOp2D::term(gs(-1, 2), int(0), int(0), 1, 0).add(&DiffOp2D::term(gs(1, 2), int(0), int(1), 0, 0));
        assert_eq!(b(Op2DName::BPlusPlus), expected);
        assert_eq!(b(Op2DName::Z), DiffOp2D::term(gs(1, 1), int(0), int(1), 0, 0));
    }

    #[test]
    fn wirtinger_convention() {
        let c = commutator_2d(&b(Op2DName::Dz), &b(Op2DName::Z));
        assert_eq!(c, DiffOp2D::scalar(gs(2, 1)));
        let c = commutator_2d(&b(Op2DName::Dzbar), &b(Op2DName::Zbar));
        assert_eq!(c, DiffOp2D::scalar(gs(2, 1)));
        assert!(commutator_2d(&b(Op2DName::Dz), &b(Op2DName::Zbar)).is_zero());
        assert!(commutator_2d(&b(Op2DName::Dzbar), &b(Op2DName::Z)).is_zero());
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(commutator_2d(&b(Op2DName::BMinusPlus), &b(Op2DName::BPlusPlus)), DiffOp2D::identity());
        assert!(commutator_2d(&b(Op2DName::Q), &b(Op2DName::H)).is_zero());
        assert!(commutator_2d(&b(Op2DName::BPlusMinus), &b(Op2DName::BPlusPlus)).is_zero());
    }

    #[test]
    fn apply_examples() {
        assert!(apply_2d(&b(Op2DName::BMinusPlus), &psi0()).is_zero());
        assert_eq!(apply_2d(&b(Op2DName::BPlusPlus), &psi0()), omega(int(0), int(1), 0, 0).unwrap());
        for lam in [rat(1, 2), int(-2), rat(-3, 2), int(3)] {
            let s = omega(lam.clone(), int(0), 0, 0).unwrap();
            let e = GradedScalar::from_rational(lam + int(1));
            assert_eq!(apply_2d(&b(Op2DName::H), &s), s.scale_scalar(&e));
        }
    }

    #[test]
    fn eps_slopes_enter_coefficients() {
        // dz on z^(eps) w gives 2 eps z^(eps - 1) w - zbar z^eps w
        let s = omega(int(0), int(0), 0, 1).unwrap();
        let img = apply_2d(&b(Op2DName::Dz), &s);
        let key = MonoExp::with_slopes(int(0), 0, int(-1), 1);
        assert_eq!(img.coeff(&key), EpsScalar::affine(int(0), int(2)));
    }

    #[test]
    fn json_round_trip() {
        let h = b(Op2DName::H);
        let back: DiffOp2D = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        assert_eq!(back, h);
    }
}
