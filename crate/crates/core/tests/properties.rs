//! Algebraic and solver invariants checked on random inputs.

use ifoham::diagnostics::{contraction_constant, squared_residual, ContractionParams, Interval};
use ifoham::exactmath::rational::ratio;
use ifoham::ifoham::{ifoham_solve, picard_solve, weighted_step};
use ifoham::{ham_solve, BivariatePolynomial, Ivp, Polynomial, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..=max_degree + 1).prop_map(Polynomial::from_coeffs)
}

fn small_ivp() -> impl Strategy<Value = Ivp> {
    (
        prop::collection::vec((0usize..=2, 0usize..=2, small_rational()), 1..=4),
        small_rational(),
        small_rational(),
        poly(2),
    )
        .prop_map(|(terms, t0, x0, shape)| {
            let mut seen = std::collections::BTreeSet::new();
            let terms: Vec<_> = terms.into_iter().filter(|(i, j, _)| seen.insert((*i, *j))).collect();
            let f = BivariatePolynomial::from_terms(terms).unwrap();
            // Shift the random shape so that it passes through (t0, x0).
            let guess = &shape + &Polynomial::constant(&x0 - shape.eval(&t0));
            Ivp::new(f, t0, x0, Some(guess)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(12), q in poly(12), r in poly(12)) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) - &q, p.clone());
    }

    #[test]
    fn fundamental_theorem(p in poly(12), t0 in small_rational(), b in small_rational()) {
        let antiderivative = p.integrate_from(&t0);
        prop_assert_eq!(antiderivative.derivative(), p.clone());
        prop_assert!(antiderivative.eval(&t0).is_zero());
        prop_assert_eq!(p.definite_integral(&t0, &b), antiderivative.eval(&b));
    }

    #[test]
    fn coefficients_stay_canonical(p in poly(8), q in poly(8)) {
        for c in (&p * &q).derivative().integrate_from(&ratio(1, 3)).coeffs() {
            prop_assert!(c.denom().is_positive());
            prop_assert_eq!(c.clone(), Rational::new(c.numer().clone(), c.denom().clone()));
        }
    }

    #[test]
    fn single_term_q_series_is_plain_substitution(ivp in small_ivp(), p in poly(4)) {
        let f = ivp.f();
        prop_assert_eq!(f.substitute_q_series(std::slice::from_ref(&p), 0).swap_remove(0), f.substitute(&p));
    }

    #[test]
    fn q_series_sums_to_full_substitution(ivp in small_ivp(), u in prop::collection::vec(poly(3), 1..=3)) {
        let f = ivp.f();
        let order = f.x_degree() * (u.len() - 1);
        let total = f
            .substitute_q_series(&u, order)
            .iter()
            .fold(Polynomial::zero(), |acc, c| &acc + c);
        let sum = u.iter().fold(Polynomial::zero(), |acc, p| &acc + p);
        prop_assert_eq!(total, f.substitute(&sum));
    }

    #[test]
    fn residual_operator_splits(ivp in small_ivp(), x in poly(5)) {
        prop_assert_eq!(&ivp.apply_n(&x) + &ivp.f().substitute(&x), x.derivative());
    }

    #[test]
    fn null_initial_conditions(ivp in small_ivp(), c0 in small_rational().prop_filter("nonzero", |c| !c.is_zero())) {
        let ham = ham_solve(&ivp, &c0, 3).unwrap();
        let ifo = ifoham_solve(&ivp, &c0, 3, None).unwrap();
        for s in [&ham, &ifo] {
            for u in &s.terms()[1..] {
                prop_assert!(u.eval(ivp.t0()).is_zero());
            }
            for x in s.partial_sums() {
                prop_assert_eq!(&x.eval(ivp.t0()), ivp.x0());
            }
        }
    }

    #[test]
    fn residual_is_nonnegative_and_zero_only_for_exact(ivp in small_ivp(), x in poly(4)) {
        let x = &x + &Polynomial::constant(ivp.x0() - x.eval(ivp.t0()));
        let e = squared_residual(&ivp, &x, &Interval::default());
        prop_assert!(!e.is_negative());
        prop_assert_eq!(e.is_zero(), ivp.apply_n(&x).is_zero());
    }

    #[test]
    fn contraction_constant_in_unit_interval(
        l in 1e-3f64..10.0,
        extra in 1e-3f64..10.0,
        a in 1e-3f64..5.0,
        c0 in -1.0f64..-1e-6,
    ) {
        let p = ContractionParams { lipschitz: l, weight: l + extra, radius: a, c0 };
        let k = contraction_constant(&p).unwrap().k;
        prop_assert!(k > 0.0 && k < 1.0, "k = {}", k);
    }
}

#[test]
fn picard_and_ifoham_agree_on_exponential_growth() {
    let f = BivariatePolynomial::from_terms([(0, 1, ratio(1, 1))]).unwrap();
    let ivp = Ivp::new(f, ratio(0, 1), ratio(1, 1), None).unwrap();
    let picard = picard_solve(&ivp, 6);
    let ifo = ifoham_solve(&ivp, &ratio(-1, 1), 6, None).unwrap();
    assert_eq!(picard.partial_sums(), ifo.partial_sums());
    let mut x = ivp.initial_guess().clone();
    for expected in &ifo.partial_sums()[1..] {
        x = weighted_step(&ivp, &x, &ratio(-1, 1)).unwrap();
        assert_eq!(&x, expected);
    }
}
