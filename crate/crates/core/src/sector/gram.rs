use num_traits::Signed;
use serde::Serialize;

use super::linalg::{congruence_diagonal, count_signs, homogenize, kernel};
use super::{NodeKey, SectorLattice};
use crate::error::{Error, Result};
use crate::rat::{self, Rational};
use crate::scalar::{scalar_sign, EpsAffine, GradedScalar, LaurentValue, Sign};
use crate::twod::{inner_2d, renorm_inner, MonoExp, State2D};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramBlock {
    pub charge: EpsAffine,
    /// Node ids in block order: ascending `(E, Q)` key, then id.
    pub nodes: Vec<usize>,
    pub matrix: Vec<Vec<LaurentValue>>,
    pub signature: Signature,
}

/// Whether a node charge belongs to the requested block. A slope-free request
/// matches eps-affine charges by their value at `eps = 0`.
fn charge_matches(node: &EpsAffine, requested: &EpsAffine) -> bool {
    if requested.is_rational() {
        node.constant == requested.constant
    } else {
        node == requested
    }
}

fn block_nodes(sector: &SectorLattice, charge: &EpsAffine) -> Vec<usize> {
    let mut v: Vec<(&NodeKey, usize)> = sector
        .nodes
        .iter()
        .filter_map(|n| n.key.as_ref().map(|k| (k, n.id)))
        .filter(|(k, _)| charge_matches(&k.charge, charge))
        .collect();
    v.sort();
    v.into_iter().map(|(_, id)| id).collect()
}

/// Pairing used inside a sector: the renormalized limit for eps-sectors, the
/// plain regularized product otherwise.
pub fn sector_product(eps: bool, f: &State2D, g: &State2D) -> Result<LaurentValue> {
    if eps {
        renorm_inner(f, g).map(LaurentValue::exact)
    } else {
        inner_2d(f, g)
    }
}

fn exact_matrix(m: &[Vec<LaurentValue>]) -> Result<Vec<Vec<GradedScalar>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    if v.is_finite_exact() {
                        Ok(v.finite.clone().unwrap_or_default())
                    } else {
                        Err(Error::NotApplicable(format!("Gram entry has a pole or inexact finite part: {}", v.finite_f64())))
                    }
                })
                .collect()
        })
        .collect()
}

/// Gram matrix of one charge block with its signature.
pub fn gram(sector: &SectorLattice, charge: &EpsAffine) -> Result<GramBlock> {
    let nodes = block_nodes(sector, charge);
    if nodes.is_empty() {
        return Err(Error::NotApplicable(format!("no node carries charge {charge}")));
    }
    let eps = sector.is_eps();
    let states: Vec<&State2D> = nodes.iter().map(|&i| &sector.nodes[i].state).collect();
    let mut matrix = vec![vec![LaurentValue::zero(); states.len()]; states.len()];
    for i in 0..states.len() {
        for j in i..states.len() {
            let v = sector_product(eps, states[i], states[j])?;
            matrix[j][i] = v.clone();
            matrix[i][j] = v;
        }
    }
    let (unit, rational) = homogenize(&exact_matrix(&matrix)?)?;
    let mut signature = Signature::default();
    for d in congruence_diagonal(&rational) {
        match scalar_sign(&unit.scale(&d))? {
            Sign::Positive => signature.positive += 1,
            Sign::Negative => signature.negative += 1,
            Sign::Zero => signature.zero += 1,
        }
    }
    debug_assert_eq!(count_signs(&congruence_diagonal(&rational)), (signature.positive, signature.negative, signature.zero));
    Ok(GramBlock { charge: charge.clone(), nodes, matrix, signature })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBlock {
    pub charge: EpsAffine,
    pub nodes: Vec<usize>,
    pub dim_total: usize,
    pub dim_null: usize,
    /// Kernel vectors of the Gram block, coefficients over `nodes`.
    #[serde(serialize_with = "serialize_basis")]
    pub null_basis: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub dim_total: usize,
    pub dim_null: usize,
    pub blocks: Vec<QuotientBlock>,
}

fn serialize_basis<S: serde::Serializer>(basis: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = basis.iter().map(|v| v.iter().map(rat::to_pq).collect()).collect();
    text.serialize(s)
}

/// Null directions of the sector metric, block by block.
pub fn quotient_report(sector: &SectorLattice) -> Result<QuotientReport> {
    let mut blocks = Vec::new();
    for charge in sector.charges() {
        let g = gram(sector, &charge)?;
        let (_, rational) = homogenize(&exact_matrix(&g.matrix)?)?;
        let null_basis = kernel(&rational);
        blocks.push(QuotientBlock {
            charge,
            dim_total: g.nodes.len(),
            dim_null: null_basis.len(),
            nodes: g.nodes,
            null_basis,
        });
    }
    Ok(QuotientReport {
        dim_total: blocks.iter().map(|b| b.dim_total).sum(),
        dim_null: blocks.iter().map(|b| b.dim_null).sum(),
        blocks,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LimitClass {
    Ordinary,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub class: LimitClass,
    /// The state at `eps = 0`.
    pub limit: State2D,
    /// An ordinary limit should be a polynomial in `z`, `zbar` times the
    /// Gaussian, i.e. lie in the span of the ordinary lattice.
    pub polynomial_limit: bool,
}

/// Classifies an eps-family by its `eps -> 0` limit.
///
/// The limit is ordinary when its plain norm has no pole. The pole is read off
/// by deforming every `zbar` exponent by a common regulator, so that
/// cancellations between terms are taken into account.
pub fn classify_limit(s: &State2D) -> Result<LimitReport> {
    if !s.has_slopes() {
        return Err(Error::NotApplicable("classification needs an eps-dependent state".into()));
    }
    let limit = s.limit_at_zero();
    let mut deformed = State2D::zero();
    for (e, c) in limit.terms() {
        deformed.add_term(MonoExp::with_slopes(e.lam.clone(), 1, e.mu.clone(), 0), c.clone());
    }
    let norm = inner_2d(&deformed, &deformed)?;
    let class = if norm.pole.is_zero() { LimitClass::Ordinary } else { LimitClass::Singular };
    let polynomial_limit = limit.terms().all(|(e, _)| rat::is_integer(&e.lam) && rat::is_integer(&e.mu) && !e.lam.is_negative() && !e.mu.is_negative());
    Ok(LimitReport { class, limit, polynomial_limit })
}
