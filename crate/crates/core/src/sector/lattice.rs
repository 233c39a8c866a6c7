use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{half, int, Rational};
use crate::scalar::{EpsAffine, EpsScalar, GradedScalar};
use crate::twod::{apply_2d, build_op_2d, eigencheck_2d, omega, proportionality_2d, psi0, DiffOp2D, Op2DName, Renorm, State2D};

pub const SECTOR_DEPTH_LIMIT: usize = 16;
pub const DEFAULT_SECTOR_DEPTH: usize = 4;

/// Joint `(H, Q)` eigenvalues of a node, affine in `eps`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeKey {
    pub energy: EpsAffine,
    pub charge: EpsAffine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub level: usize,
    pub key: Option<NodeKey>,
    pub state: State2D,
}

/// `generator(from) = coeff * to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub generator: Op2DName,
    pub to: usize,
    pub coeff: EpsScalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorLattice {
    pub seed: State2D,
    pub generators: Vec<Op2DName>,
    pub depth: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub issues: Vec<String>,
}

impl SectorLattice {
    /// Whether the sector lives at finite `eps` (some exponent carries a slope).
    pub fn is_eps(&self) -> bool {
        self.seed.has_slopes() || self.nodes.iter().any(|n| n.state.has_slopes())
    }

    pub fn node(&self, id: usize) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn keys(&self) -> Vec<NodeKey> {
        self.nodes.iter().filter_map(|n| n.key.clone()).collect()
    }

    /// Distinct charges carried by keyed nodes, ascending.
    pub fn charges(&self) -> Vec<EpsAffine> {
        let mut v: Vec<EpsAffine> = self.nodes.iter().filter_map(|n| n.key.as_ref().map(|k| k.charge.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn node_key(s: &State2D) -> Option<NodeKey> {
    let energy = EpsAffine::from_eps(&eigencheck_2d(&build_op_2d(Op2DName::H), s)?)?;
    let charge = EpsAffine::from_eps(&eigencheck_2d(&build_op_2d(Op2DName::Q), s)?)?;
    Some(NodeKey { energy, charge })
}

/// Splits `s = factor * t` so that the leading term of `t` has leading
/// eps-coefficient one. Non-invertible factors are left in place.
fn normalize(s: &State2D) -> (State2D, EpsScalar) {
    let lead = s.terms().next().and_then(|(_, c)| c.coeffs().iter().find(|g| !g.is_zero()).cloned());
    match lead.and_then(|g| GradedScalar::one().checked_div(&g).map(|inv| (g, inv))) {
        Some((g, inv)) => (s.scale_scalar(&inv), EpsScalar::constant(g)),
        None => (s.clone(), EpsScalar::one()),
    }
}

/// Breadth-first closure of `seed` under `generators` up to `depth` steps.
///
/// Images proportional to an existing node become edges into it; distinct
/// states sharing an `(E, Q)` key stay separate nodes.
pub fn generate_sector(seed: &State2D, generators: &[Op2DName], depth: usize) -> Result<SectorLattice> {
    if depth > SECTOR_DEPTH_LIMIT {
        return Err(Error::DepthExceeded { requested: depth, limit: SECTOR_DEPTH_LIMIT });
    }
    if let Some(g) = generators.iter().find(|g| !Op2DName::LADDER.contains(g)) {
        return Err(Error::Domain(format!("{g} is not a ladder generator")));
    }
    let mut lattice = SectorLattice {
        seed: seed.clone(),
        generators: generators.to_vec(),
        depth,
        nodes: Vec::new(),
        edges: Vec::new(),
        issues: Vec::new(),
    };
    if seed.is_zero() {
        return Ok(lattice);
    }
    let ops: Vec<(Op2DName, DiffOp2D)> = generators.iter().map(|&g| (g, build_op_2d(g))).collect();
    push_node(&mut lattice, seed.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let level = lattice.nodes[id].level;
        if level >= depth {
            continue;
        }
        for (name, op) in &ops {
            let image = apply_2d(op, &lattice.nodes[id].state);
            if image.is_zero() {
                continue;
            }
            let key = node_key(&image);
            let existing = lattice
                .nodes
                .iter()
                .filter(|n| n.key == key)
                .find_map(|n| proportionality_2d(&image, &n.state).map(|c| (n.id, c)));
            let (to, coeff) = match existing {
                Some(found) => found,
                None => {
                    let (state, factor) = normalize(&image);
                    let new_id = push_node(&mut lattice, state, level + 1);
                    queue.push_back(new_id);
                    (new_id, factor)
                }
            };
            lattice.edges.push(Edge { from: id, generator: *name, to, coeff });
        }
    }
    Ok(lattice)
}

fn push_node(lattice: &mut SectorLattice, state: State2D, level: usize) -> usize {
    let id = lattice.nodes.len();
    let key = node_key(&state);
    if key.is_none() {
        lattice.issues.push(format!("NonEigenstateNode: node {id} ({state}) is not a joint H, Q eigenstate"));
    }
    lattice.nodes.push(Node { id, level, key, state });
    id
}

/// Generators that leave the seed's annihilator out, plus the full set.
pub const ALL_GENERATORS: [Op2DName; 4] = Op2DName::LADDER;
pub const FIG2_GENERATORS: [Op2DName; 3] = [Op2DName::BPlusPlus, Op2DName::BPlusMinus, Op2DName::BMinusMinus];
pub const FIG3_GENERATORS: [Op2DName; 3] = [Op2DName::BPlusPlus, Op2DName::BPlusMinus, Op2DName::BMinusPlus];

/// Ordinary lattice over the Gaussian vacuum.
pub fn fig1_sector(depth: usize) -> Result<SectorLattice> {
    generate_sector(&psi0(), &ALL_GENERATORS, depth)
}

/// Fractional-charge lattice seeded by `Omega[1/2, 0]`.
pub fn fig2_sector(depth: usize) -> Result<SectorLattice> {
    generate_sector(&omega(half(), int(0), 0, 0)?, &FIG2_GENERATORS, depth)
}

/// Mirror lattice seeded by `Omega[0, 1/2]`.
pub fn fig3_sector(depth: usize) -> Result<SectorLattice> {
    generate_sector(&omega(int(0), half(), 0, 0)?, &FIG3_GENERATORS, depth)
}

/// `eps^(1/2) Omega[-n+eps, 0]` under all four generators.
pub fn eps_sector(n: u32, depth: usize) -> Result<SectorLattice> {
    let seed = omega(-Rational::from_integer(n.into()), int(0), 1, 0)?.with_renorm(Renorm::Half);
    generate_sector(&seed, &ALL_GENERATORS, depth)
}

/// `eps^(1/2) Omega[0, -n+eps]` under all four generators.
pub fn eps_sector_mirror(n: u32, depth: usize) -> Result<SectorLattice> {
    let seed = omega(int(0), -Rational::from_integer(n.into()), 0, 1)?.with_renorm(Renorm::Half);
    generate_sector(&seed, &ALL_GENERATORS, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn key(e: Rational, q: Rational) -> NodeKey {
        NodeKey { energy: EpsAffine::rational(e), charge: EpsAffine::rational(q) }
    }

    #[test]
    fn fig1_depth_two() {
        let s = generate_sector(&psi0(), &[Op2DName::BPlusPlus, Op2DName::BPlusMinus], 2).unwrap();
        assert_eq!(s.nodes.len(), 6);
        let mut keys = s.keys();
        keys.sort();
        let expected = [(1, 0), (2, -1), (2, 1), (3, -2), (3, 0), (3, 2)].map(|(e, q)| key(int(e), int(q)));
        assert_eq!(keys, expected);
        assert!(s.issues.is_empty());
        assert_eq!(fig1_sector(2).unwrap().nodes.len(), 6);
    }

    #[test]
    fn fig2_contains_lowered_seed() {
        let s = fig2_sector(2).unwrap();
        let target = omega(rat(-1, 2), int(0), 0, 0).unwrap();
        let node = s.nodes.iter().find(|n| n.state == target).expect("Omega[-1/2, 0] present");
        assert_eq!(node.key, Some(key(half(), half())));
        let edge = s.edges.iter().find(|e| e.to == node.id && e.from == 0).unwrap();
        assert_eq!(edge.generator, Op2DName::BMinusMinus);
        assert_eq!(edge.coeff, EpsScalar::from_rational(half()));
        assert!(s.issues.is_empty(), "{:?}", s.issues);
    }

    #[test]
    fn eps_sector_keys_are_affine() {
        let s = eps_sector(1, 1).unwrap();
        assert!(s.is_eps());
        assert!(s.issues.is_empty(), "{:?}", s.issues);
        let seed_key = s.nodes[0].key.clone().unwrap();
        assert_eq!(seed_key.energy, EpsAffine::new(int(0), int(1)));
        assert_eq!(seed_key.charge, EpsAffine::new(int(1), int(-1)));
        assert!(s.nodes.iter().all(|n| n.state.renorm == Renorm::Half));
    }

    #[test]
    fn limits_and_determinism() {
        assert!(matches!(fig1_sector(17), Err(Error::DepthExceeded { .. })));
        assert!(generate_sector(&psi0(), &[Op2DName::H], 1).is_err());
        assert_eq!(fig2_sector(3).unwrap(), fig2_sector(3).unwrap());
        assert!(generate_sector(&State2D::zero(), &ALL_GENERATORS, 2).unwrap().nodes.is_empty());
    }
}
