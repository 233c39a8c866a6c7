use super::{apply_1d, DiffOp1D, State1D};
use crate::error::Result;
use crate::localization::Localization;
use crate::rat::{int, Rational};
use crate::scalar::{gamma_exact, GradedScalar};

/// Regularized product `(f, g) = sum c_f c_g * 1/2 Gamma((e_f + e_g + 1)/2)`,
/// the analytic continuation of `integral_0^inf x^m exp(-x^2) dx`.
///
/// States are real, so no conjugation is involved. A pairing whose Gamma
/// argument is a non-positive integer raises [`crate::Error::Pole`]: the
/// half-line families never reach one, so it signals misuse.
pub fn inner_1d(f: &State1D, g: &State1D) -> Result<GradedScalar> {
    let half = GradedScalar::from_rational(crate::rat::half());
    let mut acc = GradedScalar::zero();
    for (ef, cf) in f.terms() {
        for (eg, cg) in g.terms() {
            let arg = (ef + eg + int(1)) / int(2);
            let gamma = gamma_exact(&arg)?;
            acc += &(&(cf * cg) * &(&gamma * &half));
        }
    }
    Ok(acc)
}

/// Leading-order behaviour of the cut-off norm near `x = 0`.
///
/// The density `|psi|^2` starts at `x^(2 e_min)`; its coefficient is a square
/// and cannot cancel.
pub fn localization_1d(s: &State1D) -> Localization {
    match s.min_exponent() {
        None => Localization::regular(),
        Some(e) => Localization::from_density_exponent(&(e * int(2))),
    }
}

/// Eigenvalue `lambda` with `op s = lambda s`, if `s` is an exact eigenstate.
pub fn eigencheck_1d(op: &DiffOp1D, s: &State1D) -> Option<GradedScalar> {
    if s.is_zero() {
        return None;
    }
    let image = apply_1d(op, s);
    super::proportionality(&image, s)
}

/// Exponent sums `m` of all term pairs, for callers that need to inspect
/// which Gamma arguments a product will touch.
pub fn pair_exponents(f: &State1D, g: &State1D) -> Vec<Rational> {
    f.exponents().flat_map(|a| g.exponents().map(move |b| a + b)).collect()
}
