//! Polar reduction of planar states to the half-line problem.
//!
//! With `z = r e^(i phi)` a monomial `zbar^lam z^mu` becomes
//! `r^(lam+mu) e^(i(mu-lam) phi)`, so a state splits by charge `q = mu - lam`.
//! Writing `Psi = r^(-1/2) e^(i q phi) Phi(r)` turns the planar Hamiltonian into
//! `1/2 (-D^2 + r^2 + (q^2 - 1/4) r^-2)` acting on `Phi`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::oned::{apply_1d, build_op_1d, ladder_state_1d, proportionality, DiffOp1D, Op1DName, State1D, DEFAULT_DEPTH_LIMIT};
use crate::rat::{half, int, rat, Rational};
use crate::scalar::{gs, GradedScalar};
use crate::twod::{apply_2d, build_op_2d, commutator_2d, compose_2d, omega, DiffOp2D, Op2DName, State2D};
use crate::verdict::IdentityVerdict;

/// Radial part of the charge-`q` component of a planar state, weight `exp(-r^2/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialProfile {
    pub charge: Rational,
    pub profile: State1D,
}

pub const BRIDGE_MAX: usize = 10;

pub fn angular_decompose(s: &State2D) -> Result<BTreeMap<Rational, RadialProfile>> {
    if s.has_slopes() {
        return Err(Error::NotApplicable("angular decomposition needs a slope-free state".into()));
    }
    let mut out: BTreeMap<Rational, RadialProfile> = BTreeMap::new();
    for (e, c) in s.terms() {
        let q = &e.mu - &e.lam;
        let entry = out
            .entry(q.clone())
            .or_insert_with(|| RadialProfile { charge: q, profile: State1D::zero() });
        entry.profile.add_term(&e.lam + &e.mu, c.at_zero());
    }
    out.retain(|_, p| !p.profile.is_zero());
    Ok(out)
}

/// `Phi(r) = r^(1/2) * profile_q(r)` for a state of pure charge `q`.
pub fn radial_reduce(s: &State2D, q: &Rational) -> Result<State1D> {
    let parts = angular_decompose(s)?;
    let profile = parts.get(q).ok_or_else(|| Error::ChargeAbsent(q.clone()))?;
    if parts.len() > 1 {
        return Err(Error::MixedCharge);
    }
    Ok(profile.profile.shift(&half()))
}

/// `1/2 (-D^2 + r^2 + (q^2 - 1/4) r^-2)`.
pub fn radial_hamiltonian(q: &Rational) -> DiffOp1D {
    let singular = (q * q - rat(1, 4)) / int(2);
    DiffOp1D::term(gs(-1, 2), int(0), 2)
        .add(&DiffOp1D::term(gs(1, 2), int(2), 0))
        .add(&DiffOp1D::term(GradedScalar::from_rational(singular), int(-2), 0))
}

fn raising_pair() -> DiffOp2D {
    compose_2d(&build_op_2d(Op2DName::BPlusPlus), &build_op_2d(Op2DName::BPlusMinus))
}

fn lowering_pair() -> DiffOp2D {
    compose_2d(&build_op_2d(Op2DName::BMinusPlus), &build_op_2d(Op2DName::BMinusMinus))
}

/// Compares reduced planar ladders with the half-line ladders for `n <= n_max`.
///
/// Each record holds the exact constant `c_n` with
/// `reduce((b++ b+-)^n seed) = c_n (A+)^n vacuum`; the status is PASS when the
/// two sides are proportional at all. The doubled Wirtinger derivative makes
/// `c_n = 2^-n`.
pub fn bridge_audit(n_max: usize) -> Result<Vec<IdentityVerdict>> {
    if n_max > BRIDGE_MAX {
        return Err(Error::DepthExceeded { requested: n_max, limit: BRIDGE_MAX });
    }
    let mut out = Vec::new();
    let up = raising_pair();
    let down = lowering_pair();
    let a_minus = build_op_1d(Op1DName::LadderDown, None)?;

    let ops = |a: Op2DName, b: Op2DName| {
        let (fa, fb) = (build_op_2d(a), build_op_2d(b));
        let r = commutator_2d(&fa, &fb);
        IdentityVerdict::from_residual(
            format!("product_commutes[{a},{b}]"),
            format!("{a} {b}"),
            format!("{b} {a}"),
            (!r.is_zero()).then(|| r.to_string()),
        )
    };
    out.push(ops(Op2DName::BPlusPlus, Op2DName::BPlusMinus));
    out.push(ops(Op2DName::BMinusPlus, Op2DName::BMinusMinus));

    // Omega[-3/2, 0] has charge 3/2 and reduces to r^-1 w; Omega[3/2, 0] has charge -3/2 and reduces to r^2 w.
    for (alpha, lam) in [(int(1), rat(-3, 2)), (int(-2), rat(3, 2))] {
        let q = -lam.clone();
        let mut planar = omega(lam.clone(), int(0), 0, 0)?;
        for n in 0..=n_max {
            let (line, _) = ladder_state_1d(&alpha, n, DEFAULT_DEPTH_LIMIT)?;
            let reduced = radial_reduce(&planar, &q)?;
            out.push(compare(
                format!("bridge_raise[alpha={alpha},n={n}]"),
                format!("reduce((b++ b+-)^{n} Omega[{lam}, 0], {q})"),
                format!("(A+)^{n} Psi({alpha})_0"),
                &reduced,
                &line,
                n,
            ));
            if n >= 1 {
                let lowered = radial_reduce(&apply_2d(&down, &planar), &q)?;
                let line_lowered = apply_1d(&a_minus, &line);
                out.push(compare(
                    format!("bridge_lower[alpha={alpha},n={n}]"),
                    format!("reduce(b-+ b-- (b++ b+-)^{n} Omega[{lam}, 0], {q})"),
                    format!("A- (A+)^{n} Psi({alpha})_0"),
                    &lowered,
                    &line_lowered,
                    n + 1,
                ));
            }
            planar = apply_2d(&up, &planar);
        }
    }
    Ok(out)
}

/// Records `lhs = c * rhs`; `c` is reported next to the expected `2^-steps`.
fn compare(id: String, lhs_text: String, rhs_text: String, lhs: &State1D, rhs: &State1D, steps: usize) -> IdentityVerdict {
    let expected = GradedScalar::from_rational(Rational::new(1.into(), BigInt::from(1) << steps));
    match proportionality(lhs, rhs) {
        Some(c) => {
            let rhs_text = format!("{c} * {rhs_text}");
            let v = IdentityVerdict::from_residual(id, lhs_text, rhs_text, None);
            if c == expected {
                v
            } else {
                v.with_correction(format!("constant {c} differs from {expected}"))
            }
        }
        None => {
            let r = lhs.sub(&rhs.scale(&expected));
            IdentityVerdict::from_residual(id, lhs_text, format!("{expected} * {rhs_text}"), Some(r.to_string()))
        }
    }
}
