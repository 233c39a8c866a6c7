use num_traits::Zero;

use super::{apply_1d, build_op_1d, eigencheck_1d, Op1DName, State1D};
use crate::error::{Error, Result};
use crate::rat::{self, int, Rational};
use crate::scalar::GradedScalar;

pub const DEFAULT_DEPTH_LIMIT: usize = 64;

/// `x^(-alpha) w`, the kernel of `a-_alpha` (normalization dropped).
pub fn solve_vacuum_1d(alpha: &Rational) -> State1D {
    State1D::power(-alpha.clone()).with_label(format!("vacuum(alpha={alpha})"))
}

/// `(A+)^n` applied to the vacuum of `a-_alpha`, with energy `1/2 - alpha + 2n`.
///
/// Only `alpha in {-2, 1}` make `A+` a ladder for `H1`. The eigenvalue is
/// re-verified exactly before returning.
pub fn ladder_state_1d(alpha: &Rational, n: usize, depth_limit: usize) -> Result<(State1D, Rational)> {
    ladder_family_1d(alpha, n, depth_limit).map(|mut v| v.pop().expect("n + 1 states"))
}

/// All ladder states `0..=n` of one family, in order.
pub fn ladder_family_1d(alpha: &Rational, n: usize, depth_limit: usize) -> Result<Vec<(State1D, Rational)>> {
    if *alpha != int(-2) && *alpha != int(1) {
        return Err(Error::Domain(format!("ladder families exist for alpha in {{-2, 1}}, got {alpha}")));
    }
    if n > depth_limit {
        return Err(Error::DepthExceeded { requested: n, limit: depth_limit });
    }
    let h = build_op_1d(Op1DName::H1, None)?;
    let up = build_op_1d(Op1DName::LadderUp, None)?;
    let mut state = solve_vacuum_1d(alpha);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            state = apply_1d(&up, &state);
        }
        let energy = rat::half() - alpha + int(2 * k as i64);
        let measured = eigencheck_1d(&h, &state);
        if measured != Some(GradedScalar::from_rational(energy.clone())) {
            return Err(Error::Domain(format!("ladder state n={k} is not an H1 eigenstate with energy {energy}")));
        }
        out.push((state.clone().with_label(format!("psi(alpha={alpha}, n={k})")), energy));
    }
    Ok(out)
}

/// True when every exponent of `s` satisfies `pred`.
pub fn exponents_all(s: &State1D, pred: impl Fn(&Rational) -> bool) -> bool {
    s.exponents().all(pred)
}

pub fn is_even_int(e: &Rational) -> bool {
    rat::is_integer(e) && (e.to_integer() % num_bigint::BigInt::from(2)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oned::DiffOp1D;
    use crate::scalar::gs;

    #[test]
    fn vacua() {
        assert_eq!(solve_vacuum_1d(&int(-2)), State1D::power(int(2)));
        assert_eq!(solve_vacuum_1d(&int(1)), State1D::power(int(-1)));
        assert_eq!(solve_vacuum_1d(&int(0)), State1D::power(int(0)));
        for alpha in [int(-2), int(1), int(0), rat::rat(3, 2)] {
            let a = build_op_1d(Op1DName::AMinus, Some(&alpha)).unwrap();
            assert!(apply_1d(&a, &solve_vacuum_1d(&alpha)).is_zero());
        }
    }

    #[test]
    fn ladder_examples() {
        let (s, e) = ladder_state_1d(&int(1), 0, DEFAULT_DEPTH_LIMIT).unwrap();
        assert_eq!((s, e), (State1D::power(int(-1)), rat::rat(-1, 2)));
        let (s, e) = ladder_state_1d(&int(1), 1, DEFAULT_DEPTH_LIMIT).unwrap();
        assert_eq!(s, State1D::from_terms([(int(-1), gs(1, 1)), (int(1), gs(2, 1))]));
        assert_eq!(e, rat::rat(3, 2));
        let (s, e) = ladder_state_1d(&int(-2), 1, DEFAULT_DEPTH_LIMIT).unwrap();
        assert_eq!(e, rat::rat(9, 2));
        assert!(s.coeff(&int(0)).is_zero());
        assert!(exponents_all(&s, |e| is_even_int(e) && *e >= int(2)));
        assert_eq!(s.exponents().max(), Some(&int(4)));
    }

    #[test]
    fn depth_and_alpha_guards() {
        assert_eq!(
            ladder_state_1d(&int(1), 5, 4).unwrap_err(),
            Error::DepthExceeded { requested: 5, limit: 4 }
        );
        assert!(matches!(ladder_state_1d(&int(2), 1, 8), Err(Error::Domain(_))));
    }

    #[test]
    fn a_plus_family_products() {
        // A+ = a+_alpha a+_-alpha for both admissible alpha.
        let up = build_op_1d(Op1DName::LadderUp, None).unwrap();
        for alpha in [int(1), int(-2)] {
            let p = build_op_1d(Op1DName::APlus, Some(&alpha)).unwrap();
            let m = build_op_1d(Op1DName::APlus, Some(&-alpha.clone())).unwrap();
            assert_eq!(crate::oned::compose_1d(&p, &m), up);
        }
        let _ = DiffOp1D::zero();
    }
}
