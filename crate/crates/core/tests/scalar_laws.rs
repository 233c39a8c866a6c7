use krein_osc::rat::{int, rat, Rational};
use krein_osc::scalar::{gamma_exact, gamma_laurent, EpsScalar, GradedScalar};
use proptest::prelude::*;
use statrs::function::gamma::gamma;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn graded() -> impl Strategy<Value = GradedScalar> {
    prop::collection::vec((small_rational(), 0i32..2, -3i32..=3), 0..4).prop_map(|terms| {
        terms.into_iter().fold(GradedScalar::zero(), |acc, (q, j, k)| acc + GradedScalar::monomial(q, j, k))
    })
}

fn eps_poly() -> impl Strategy<Value = EpsScalar> {
    prop::collection::vec(graded(), 0..3).prop_map(EpsScalar::from_coeffs)
}

/// Sum of the absolute values of the terms, a bound for rounding error.
fn magnitude(a: &GradedScalar) -> f64 {
    a.terms().map(|(j, k, q)| GradedScalar::monomial(q.clone(), j, k).to_f64().abs()).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graded_ring_laws(a in graded(), b in graded(), c in graded()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, GradedScalar::zero());
        prop_assert_eq!(&a * &GradedScalar::one(), a.clone());
    }

    #[test]
    fn graded_division_inverts_multiplication(a in graded(), b in graded()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b), Some(a));
    }

    #[test]
    fn graded_numeric_value_is_a_ring_map(a in graded(), b in graded()) {
        let tol = 1e-9 * (1.0 + magnitude(&a) * magnitude(&b));
        prop_assert!(((&a * &b).to_f64() - a.to_f64() * b.to_f64()).abs() <= tol);
        prop_assert!(((&a + &b).to_f64() - a.to_f64() - b.to_f64()).abs() <= tol);
    }

    #[test]
    fn graded_json_round_trip(a in graded()) {
        prop_assert_eq!(GradedScalar::parse(&serde_json::to_string(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn eps_ring_laws(a in eps_poly(), b in eps_poly(), c in eps_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).at_zero(), &a.at_zero() * &b.at_zero());
    }

    #[test]
    fn eps_division_inverts_multiplication(a in eps_poly(), b in eps_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b), Some(a));
    }
}

fn half_integers() -> impl Iterator<Item = Rational> {
    (-19..=21).filter(|k| k % 2 != 0).map(|k| rat(k, 2))
}

#[test]
fn gamma_recurrence_on_half_integers() {
    for s in half_integers() {
        let lhs = gamma_exact(&(&s + int(1))).unwrap();
        let rhs = gamma_exact(&s).unwrap().scale(&s);
        assert_eq!(lhs, rhs, "Gamma({s} + 1) = {s} Gamma({s})");
    }
}

#[test]
fn gamma_matches_statrs() {
    let args = half_integers().chain((1..=15).map(int));
    for s in args {
        let exact = gamma_exact(&s).unwrap().to_f64();
        let reference = gamma(krein_osc::rat::to_f64(&s));
        assert!((exact - reference).abs() <= 1e-12 * reference.abs(), "Gamma({s}): {exact} vs {reference}");
    }
}

#[test]
fn gamma_laurent_data_matches_statrs() {
    // Gamma(-m + e) = R/e + F + O(e): the residue from e * Gamma, the finite
    // part from the symmetric difference, which cancels the O(e) term.
    for m in 0..6 {
        let v = gamma_laurent(&int(-m), &int(1)).unwrap();
        let residue = v.pole.to_f64();
        let e = 1e-4;
        let (up, down) = (gamma(-(m as f64) + e), gamma(-(m as f64) - e));
        assert!((e * (up - down) / 2.0 - residue).abs() <= 1e-7 * residue.abs(), "m = {m}");
        let finite = (up + down) / 2.0;
        assert!((finite - v.finite_f64()).abs() <= 1e-6 * (1.0 + finite.abs()), "m = {m}: {finite} vs {}", v.finite_f64());
    }
}

#[test]
fn gamma_poles_are_errors_without_a_slope() {
    for m in 0..5 {
        assert!(gamma_exact(&int(-m)).is_err());
        assert!(gamma_laurent(&int(-m), &int(0)).is_err());
    }
}
