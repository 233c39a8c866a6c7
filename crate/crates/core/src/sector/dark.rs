use serde::Serialize;

use super::gram::sector_product;
use super::SectorLattice;
use crate::error::{Error, Result};
use crate::twod::{apply_2d, build_op_2d, Op2DName, State2D};

pub const DARK_DEGREE_LIMIT: usize = 6;
pub const DEFAULT_DARK_DEGREE: usize = 4;

/// Exponents of the ordered monomial `b++^a b+-^b b-+^c b--^d`.
///
/// Commutators of the b-operators are scalars, so ordered monomials span all
/// polynomial interactions of the same maximal degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Monomial(pub [u32; 4]);

const ORDER: [Op2DName; 4] = [Op2DName::BPlusPlus, Op2DName::BPlusMinus, Op2DName::BMinusPlus, Op2DName::BMinusMinus];

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn all(max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=max_degree {
            for b in 0..=max_degree - a {
                for c in 0..=max_degree - a - b {
                    for d in 0..=max_degree - a - b - c {
                        out.push(Monomial([a, b, c, d]));
                    }
                }
            }
        }
        out
    }

    /// Applies the monomial, rightmost factor first.
    pub fn apply(&self, s: &State2D) -> State2D {
        let mut out = s.clone();
        for (name, &power) in ORDER.iter().zip(self.0.iter()).rev() {
            let op = build_op_2d(*name);
            for _ in 0..power {
                out = apply_2d(&op, &out);
            }
        }
        out
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = ORDER
            .iter()
            .zip(self.0.iter())
            .filter(|(_, &p)| p > 0)
            .map(|(n, &p)| if p == 1 { n.to_string() } else { format!("{n}^{p}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DarkEntry {
    pub monomial: String,
    pub left: usize,
    pub right: usize,
    /// Exact value, or the error code and message when the pairing is undefined.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DarkReport {
    pub max_degree: usize,
    pub monomials: usize,
    pub pairs: usize,
    pub nonzero: Vec<DarkEntry>,
}

impl DarkReport {
    pub fn is_dark(&self) -> bool {
        self.nonzero.is_empty()
    }
}

/// Every matrix element `<phi, M psi>` with `phi` in `a`, `psi` in `b` and `M`
/// an ordered b-monomial of degree at most `max_degree`.
///
/// Elements are taken with the renormalized pairing (plain pairing for
/// slope-free pairs); only nonzero or undefined elements are listed.
pub fn dark_check(a: &SectorLattice, b: &SectorLattice, max_degree: usize) -> Result<DarkReport> {
    if max_degree > DARK_DEGREE_LIMIT {
        return Err(Error::DepthExceeded { requested: max_degree, limit: DARK_DEGREE_LIMIT });
    }
    let monomials = Monomial::all(max_degree as u32);
    let eps = a.is_eps() || b.is_eps();
    let mut nonzero = Vec::new();
    for m in &monomials {
        for right in &b.nodes {
            let image = m.apply(&right.state);
            if image.is_zero() {
                continue;
            }
            for left in &a.nodes {
                let value = match sector_product(eps, &left.state, &image) {
                    Ok(v) if v.is_zero() => continue,
                    Ok(v) => match v.finite {
                        Some(f) if v.pole.is_zero() => f.to_string(),
                        _ => format!("pole {} with finite part ~{}", v.pole, v.finite_f64()),
                    },
                    Err(e) => format!("{}: {e}", e.code()),
                };
                nonzero.push(DarkEntry { monomial: m.to_string(), left: left.id, right: right.id, value });
            }
        }
    }
    Ok(DarkReport { max_degree, monomials: monomials.len(), pairs: a.nodes.len() * b.nodes.len(), nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;
    use crate::sector::{eps_sector, fig1_sector, fig2_sector};
    use crate::twod::omega;

    #[test]
    fn monomial_count_and_order() {
        assert_eq!(Monomial::all(4).len(), 70);
        assert_eq!(Monomial::all(0), vec![Monomial([0, 0, 0, 0])]);
        assert_eq!(Monomial([2, 0, 0, 1]).to_string(), "b++^2 b--");
        // b-- acts first: b++ b-- Omega[1, 0] = b++ Omega[0, 0] = Omega[0, 1].
        let s = Monomial([1, 0, 0, 1]).apply(&omega(int(1), int(0), 0, 0).unwrap());
        assert_eq!(s, omega(int(0), int(1), 0, 0).unwrap());
    }

    #[test]
    fn fig1_is_dark_to_fractional_and_eps_sectors() {
        let f1 = fig1_sector(2).unwrap();
        assert!(dark_check(&f1, &fig2_sector(2).unwrap(), 2).unwrap().is_dark());
        assert!(dark_check(&f1, &eps_sector(1, 1).unwrap(), 2).unwrap().is_dark());
        assert!(!dark_check(&f1, &f1, 1).unwrap().is_dark());
        assert!(dark_check(&f1, &f1, 7).is_err());
    }
}
