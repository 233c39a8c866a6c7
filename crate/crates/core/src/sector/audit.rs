//! Symbolic check of the displayed operator identities.

use crate::oned::{build_op_1d, commutator_1d, compose_1d, DiffOp1D, Op1DName};
use crate::rat::{half, int, rat, Rational};
use crate::scalar::{gs, EpsScalar, GradedScalar};
use crate::twod::{apply_2d, build_op_2d, commutator_2d, compose_2d, omega, psi0, DiffOp2D, Op2DName, State2D};
use crate::verdict::IdentityVerdict;

use Op2DName::{BMinusMinus as BMM, BMinusPlus as BMP, BPlusMinus as BPM, BPlusPlus as BPP};

fn op1(name: Op1DName, alpha: Option<&Rational>) -> DiffOp1D {
    build_op_1d(name, alpha).expect("alpha is supplied for every factor")
}

fn b(name: Op2DName) -> DiffOp2D {
    build_op_2d(name)
}

fn check_1d(id: String, lhs: String, rhs: String, l: &DiffOp1D, r: &DiffOp1D) -> IdentityVerdict {
    let res = l.sub(r);
    IdentityVerdict::from_residual(id, lhs, rhs, (!res.is_zero()).then(|| res.to_string()))
}

fn check_2d(id: &str, lhs: &str, rhs: &str, l: &DiffOp2D, r: &DiffOp2D) -> IdentityVerdict {
    let res = l.sub(r);
    IdentityVerdict::from_residual(id, lhs, rhs, (!res.is_zero()).then(|| res.to_string()))
}

/// The scalar `c` with `target = c * basis`, if any.
pub fn solve_scalar(target: &DiffOp2D, basis: &DiffOp2D) -> Option<GradedScalar> {
    let (key, bc) = basis.terms().next()?;
    let tc = target.terms().find(|(k, _)| *k == key).map(|(_, c)| c.clone()).unwrap_or_default();
    let c = tc.checked_div(bc)?;
    (basis.scale(&c) == *target).then_some(c)
}

/// Checks `target = coeff * bilinear + offset`; on failure solves for the
/// coefficient and appends a second verdict for the repaired form.
fn check_with_correction(
    id: &str,
    target_name: &str,
    bilinear_text: &str,
    target: &DiffOp2D,
    bilinear: &DiffOp2D,
    coeff: GradedScalar,
    offset: GradedScalar,
) -> Vec<IdentityVerdict> {
    let rhs_for = |c: &GradedScalar| {
        if offset.is_zero() {
            format!("{c}*({bilinear_text})")
        } else {
            format!("{c}*({bilinear_text}) + {offset}")
        }
    };
    let offset_op = DiffOp2D::scalar(offset.clone());
    let stated = bilinear.scale(&coeff).add(&offset_op);
    let verdict = check_2d(id, target_name, &rhs_for(&coeff), target, &stated);
    if verdict.passed() {
        return vec![verdict];
    }
    match solve_scalar(&target.sub(&offset_op), bilinear) {
        Some(c) => {
            let form = format!("{target_name} = {}", rhs_for(&c));
            let repaired = bilinear.scale(&c).add(&offset_op);
            let second = check_2d(&format!("{id}:corrected"), target_name, &rhs_for(&c), target, &repaired);
            vec![verdict.with_correction(form), second]
        }
        None => vec![verdict],
    }
}

fn state_check(id: String, lhs: String, rhs: String, l: &State2D, r: &State2D) -> IdentityVerdict {
    let res = l.try_add(&r.scale(&EpsScalar::from_rational(int(-1))));
    let residual = match res {
        Ok(s) if s.is_zero() => None,
        Ok(s) => Some(s.to_string()),
        Err(e) => Some(e.to_string()),
    };
    IdentityVerdict::from_residual(id, lhs, rhs, residual)
}

/// Sample exponents for identities stated for arbitrary `lam`, `mu`.
fn samples() -> Vec<Rational> {
    (-7..=7).map(|k| rat(k, 2)).collect()
}

/// First failing sample of a family of state identities, or a PASS record.
fn family(id: &str, lhs: &str, rhs: &str, cases: impl Iterator<Item = (String, State2D, State2D)>) -> IdentityVerdict {
    for (label, l, r) in cases {
        let v = state_check(id.to_string(), lhs.to_string(), rhs.to_string(), &l, &r);
        if !v.passed() {
            return IdentityVerdict { residual: format!("{label}: {}", v.residual), ..v };
        }
    }
    IdentityVerdict::from_residual(id, lhs, format!("{rhs} (lam, mu in -7/2..7/2 step 1/2, and lam = -1+eps)"), None)
}

pub fn identity_audit() -> Vec<IdentityVerdict> {
    let mut out = Vec::new();

    // Half-line factorization, ladder commutators and ladder products.
    let h1 = op1(Op1DName::H1, None);
    let up = op1(Op1DName::LadderUp, None);
    let down = op1(Op1DName::LadderDown, None);
    for alpha in [int(1), int(-2)] {
        let shift = GradedScalar::from_rational(half() - &alpha);
        let fact = compose_1d(&op1(Op1DName::APlus, Some(&alpha)), &op1(Op1DName::AMinus, Some(&alpha)))
            .add(&DiffOp1D::scalar(shift.clone()));
        out.push(check_1d(format!("factorization[alpha={alpha}]"), format!("a+({alpha}) a-({alpha}) + {shift}"), "H1".into(), &fact, &h1));
        let neg = -alpha.clone();
        let raise = compose_1d(&op1(Op1DName::APlus, Some(&alpha)), &op1(Op1DName::APlus, Some(&neg)));
        out.push(check_1d(format!("raising_product[alpha={alpha}]"), format!("a+({alpha}) a+({neg})"), "A+".into(), &raise, &up));
        let lower = compose_1d(&op1(Op1DName::AMinus, Some(&neg)), &op1(Op1DName::AMinus, Some(&alpha)));
        out.push(check_1d(format!("lowering_product[alpha={alpha}]"), format!("a-({neg}) a-({alpha})"), "A-".into(), &lower, &down));
    }
    out.push(check_1d("ladder_shift[A+]".into(), "[A+, H1]".into(), "-2*A+".into(), &commutator_1d(&up, &h1), &up.scale(&gs(-2, 1))));
    out.push(check_1d("ladder_shift[A-]".into(), "[A-, H1]".into(), "2*A-".into(), &commutator_1d(&down, &h1), &down.scale(&gs(2, 1))));

    // Canonical commutators of the b-operators.
    let one = DiffOp2D::identity();
    let zero = DiffOp2D::zero();
    for (x, y, expected) in [
        (BMP, BPP, &one),
        (BMM, BPM, &one),
        (BPM, BPP, &zero),
        (BMM, BPP, &zero),
        (BPM, BMP, &zero),
        (BMM, BMP, &zero),
    ] {
        out.push(check_2d(&format!("b_commutator[{x},{y}]"), &format!("[{x}, {y}]"), &expected.to_string(), &commutator_2d(&b(x), &b(y)), expected));
    }

    // b-forms of H and Q against their differential forms.
    let h = b(Op2DName::H);
    let q = b(Op2DName::Q);
    let pp = compose_2d(&b(BPP), &b(BMP));
    let mm = compose_2d(&b(BPM), &b(BMM));
    out.extend(check_with_correction("hamiltonian_b_form", "H", "b++ b-+ + b+- b--", &h, &pp.add(&mm), gs(1, 2), GradedScalar::one()));
    out.extend(check_with_correction("charge_b_form", "Q", "b++ b-+ - b+- b--", &q, &pp.sub(&mm), gs(1, 2), GradedScalar::zero()));

    out.push(check_2d("charge_conserved", "[Q, H]", "0", &commutator_2d(&q, &h), &zero));
    for (x, sign_h, sign_q) in [(BPP, -1, -1), (BMP, 1, 1), (BPM, -1, 1), (BMM, 1, -1)] {
        let op = b(x);
        out.push(check_2d(&format!("energy_shift[{x}]"), &format!("[{x}, H]"), &format!("{sign_h}*{x}"), &commutator_2d(&op, &h), &op.scale(&gs(sign_h, 1))));
        out.push(check_2d(&format!("charge_shift[{x}]"), &format!("[{x}, Q]"), &format!("{sign_q}*{x}"), &commutator_2d(&op, &q), &op.scale(&gs(sign_q, 1))));
    }

    // Vacuum and seed annihilation, eigenvalue equations.
    for x in [BMP, BMM] {
        out.push(state_check(format!("vacuum_annihilated[{x}]"), format!("{x} Psi0"), "0".into(), &apply_2d(&b(x), &psi0()), &State2D::zero()));
    }
    let deformed = || omega(int(-1), int(0), 1, 0).expect("slopes are 0 or 1");
    let lam_cases = || {
        samples()
            .into_iter()
            .map(|l| (format!("lam = {l}"), omega(l, int(0), 0, 0).expect("slope-free")))
            .chain(std::iter::once(("lam = -1+eps".to_string(), deformed())))
    };
    let mu_cases = || samples().into_iter().map(|m| (format!("mu = {m}"), omega(int(0), m, 0, 0).expect("slope-free")));
    out.push(family("annihilated[b-+ Omega[lam, 0]]", "b-+ Omega[lam, 0]", "0", lam_cases().map(|(l, s)| (l, apply_2d(&b(BMP), &s), State2D::zero()))));
    out.push(family("annihilated[b-- Omega[0, mu]]", "b-- Omega[0, mu]", "0", mu_cases().map(|(l, s)| (l, apply_2d(&b(BMM), &s), State2D::zero()))));
    out.push(family(
        "charge_eigenvalue",
        "Q Omega[lam, mu]",
        "(mu - lam) Omega[lam, mu]",
        samples().into_iter().flat_map(|l| samples().into_iter().map(move |m| (l.clone(), m))).map(|(l, m)| {
            let s = omega(l.clone(), m.clone(), 0, 0).expect("slope-free");
            (format!("lam = {l}, mu = {m}"), apply_2d(&q, &s), s.scale(&EpsScalar::from_rational(&m - &l)))
        }),
    ));
    out.push(family(
        "energy_eigenvalue[Omega[lam, 0]]",
        "H Omega[lam, 0]",
        "(lam + 1) Omega[lam, 0]",
        lam_cases().map(|(label, s)| {
            let lam = s.terms().next().map(|(e, _)| e.lam_eps()).unwrap_or_default();
            let image = apply_2d(&h, &s);
            let expected = s.scale(&(&lam + &EpsScalar::one()));
            (label, image, expected)
        }),
    ));
    out.push(family(
        "energy_eigenvalue[Omega[0, mu]]",
        "H Omega[0, mu]",
        "(mu + 1) Omega[0, mu]",
        mu_cases().map(|(label, s)| {
            let mu = s.terms().next().map(|(e, _)| e.mu_eps()).unwrap_or_default();
            (label, apply_2d(&h, &s), s.scale(&(&mu + &EpsScalar::one())))
        }),
    ));
    out
}
