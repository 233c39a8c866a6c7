use num_traits::Zero;

use super::{apply_2d, proportionality_2d, DiffOp2D, MonoExp, Op2DName, State2D};
use crate::error::{Error, Result};
use crate::localization::Localization;
use crate::rat::{int, Rational};
use crate::scalar::{gamma_exact, gamma_laurent, EpsScalar, GradedScalar, LaurentValue};

/// Gamma-regularized product of two planar states as Laurent data in `eps`.
///
/// Only term pairs whose charges agree identically in `eps` contribute; each
/// contributes `c_f c_g * pi * Gamma((lam_f + mu_f + lam_g + mu_g)/2 + 1)`,
/// which is `integral (zbar z)^s exp(-zbar z) dx dy = pi Gamma(s + 1)` with the
/// conjugate `conj(zbar^lam z^mu) = z^lam zbar^mu`. The sum is then multiplied
/// by `eps^(renorm_f + renorm_g)`.
pub fn inner_2d(f: &State2D, g: &State2D) -> Result<LaurentValue> {
    let raw = raw_inner(f, g)?;
    match f.renorm.doubled() + g.renorm.doubled() {
        0 => Ok(raw),
        2 => Ok(raw.times_eps()),
        _ => {
            // eps^(1/2) (P/eps + F): the pole diverges as eps^(-1/2), the rest vanishes.
            if raw.pole.is_zero() {
                Ok(LaurentValue::zero())
            } else {
                Err(Error::NotConvergent(format!("eps^(-1/2) divergence with residue {}", raw.pole)))
            }
        }
    }
}

fn raw_inner(f: &State2D, g: &State2D) -> Result<LaurentValue> {
    let pi = GradedScalar::pi();
    let mut acc = LaurentValue::zero();
    for (ef, cf) in f.terms() {
        let qf = ef.charge();
        for (eg, cg) in g.terms() {
            if eg.charge() != qf {
                continue;
            }
            let deg = ef.degree();
            let deg_g = eg.degree();
            let base = (&deg.constant + &deg_g.constant) / int(2) + int(1);
            let slope = (&deg.slope + &deg_g.slope) / int(2);
            let gamma = if slope.is_zero() {
                LaurentValue::exact(gamma_exact(&base)?)
            } else {
                gamma_laurent(&base, &slope)?
            };
            let coeff = (cf * cg).scale(&pi);
            acc = acc.add(&gamma.mul_eps(&coeff));
        }
    }
    Ok(acc)
}

/// `lim_{eps->0} eps^(renorm_f + renorm_g) (f_eps, g_eps)`.
///
/// Exact: after renormalization only Gamma residues reach order `eps^0`.
pub fn renorm_inner(f: &State2D, g: &State2D) -> Result<GradedScalar> {
    let v = inner_2d(f, g)?;
    if !v.pole.is_zero() {
        return Err(Error::NotConvergent(format!("surviving 1/eps pole with residue {}", v.pole)));
    }
    v.finite.ok_or_else(|| Error::Domain("finite part at a Gamma pole needs digamma values".into()))
}

/// Small-`r` behaviour of `integral_{zbar z > eps} |psi|^2`.
///
/// After the angular integration the radial density starts at
/// `r^(2 t_min + 1)` with `t_min` the least `lam + mu`; its coefficient is a
/// sum of squares and cannot cancel.
pub fn localization_2d(s: &State2D) -> Result<Localization> {
    if s.has_slopes() {
        return Err(Error::NotApplicable("localization needs a slope-free state".into()));
    }
    let s = s.limit_at_zero();
    let t_min = s.terms().map(|(e, _)| &e.lam + &e.mu).min();
    Ok(match t_min {
        None => Localization::regular(),
        Some(t) => Localization::from_density_exponent(&(t * int(2) + int(1))),
    })
}

/// Eigenvalue `lambda(eps)` with `op s = lambda s`, if one exists.
pub fn eigencheck_2d(op: &DiffOp2D, s: &State2D) -> Option<EpsScalar> {
    if s.is_zero() {
        return None;
    }
    proportionality_2d(&apply_2d(op, s), s)
}

/// Closed-form action of a ladder operator on `Omega_{lam mu}` as
/// `(coefficient, lam', mu')` triples, zero coefficients dropped:
///
/// - `b++ : -lam Omega_{lam-1, mu} + Omega_{lam, mu+1}`
/// - `b-+ : mu Omega_{lam, mu-1}`
/// - `b+- : -mu Omega_{lam, mu-1} + Omega_{lam+1, mu}`
/// - `b-- : lam Omega_{lam-1, mu}`
pub fn ladder_closed_form(which: Op2DName, lam: &Rational, mu: &Rational) -> Result<Vec<(Rational, Rational, Rational)>> {
    let one = int(1);
    let raw = match which {
        Op2DName::BPlusPlus => vec![(-lam.clone(), lam - &one, mu.clone()), (one.clone(), lam.clone(), mu + &one)],
        Op2DName::BMinusPlus => vec![(mu.clone(), lam.clone(), mu - &one)],
        Op2DName::BPlusMinus => vec![(-mu.clone(), lam.clone(), mu - &one), (one.clone(), lam + &one, mu.clone())],
        Op2DName::BMinusMinus => vec![(lam.clone(), lam - &one, mu.clone())],
        other => return Err(Error::Domain(format!("{other} is not a ladder operator"))),
    };
    Ok(raw.into_iter().filter(|(c, _, _)| !c.is_zero()).collect())
}

/// The closed form rendered as a state, for comparison against [`apply_2d`].
pub fn closed_form_state(which: Op2DName, lam: &Rational, mu: &Rational) -> Result<State2D> {
    let mut s = State2D::zero();
    for (c, l, m) in ladder_closed_form(which, lam, mu)? {
        s.add_term(MonoExp::new(l, m), EpsScalar::from_rational(c));
    }
    Ok(s)
}
