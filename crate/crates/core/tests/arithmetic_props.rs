mod common;

use proptest::prelude::*;
use zetametric::arithmetic::{
    field_distance, field_distance_euler, ideal_count, kronecker_symbol, l_function_eval, local_factor,
    primes_up_to, FieldDistanceConfig, NumberField, QuadraticField,
};

fn quad(d: u64) -> QuadraticField {
    QuadraticField::new(d).unwrap()
}

#[test]
fn local_factorization_identity() {
    for d in [5u64, 6, 2, 3, 13, 30] {
        let k = quad(d);
        let field = NumberField::Quadratic(k);
        let delta = k.discriminant() as i64;
        for p in primes_up_to(1000) {
            let chi = common::kronecker(delta, p) as f64;
            for s in [1.2, 2.0, 3.0] {
                let x = (p as f64).powf(-s);
                let oracle = 1.0 / ((1.0 - x) * (1.0 - chi * x));
                let v = local_factor(&field, p, s).unwrap();
                assert!((v - oracle).abs() <= 1e-14 * oracle, "d={d} p={p} s={s}");
            }
        }
    }
}

#[test]
fn ideal_counts_generate_the_local_factor() {
    // Coefficients of 1/((1−x)(1−χx)) by convolution of the two geometric series.
    for d in [5u64, 6, 7, 10] {
        let k = quad(d);
        let field = NumberField::Quadratic(k);
        for p in primes_up_to(60) {
            let chi = common::kronecker(k.discriminant() as i64, p) as i64;
            for f in 1..=6u32 {
                let oracle: i64 = (0..=f).map(|j| chi.pow(j)).sum();
                assert_eq!(ideal_count(&field, p, f).unwrap() as i64, oracle, "d={d} p={p} f={f}");
            }
        }
    }
    for p in primes_up_to(60) {
        for f in 1..=6 {
            assert_eq!(ideal_count(&NumberField::Rationals, p, f).unwrap(), 1);
        }
    }
}

#[test]
fn full_period_sum_vanishes() {
    for d in [2u64, 3, 5, 6, 7, 30, 210] {
        let delta = quad(d).discriminant();
        let total: i64 = (1..=delta).map(|n| kronecker_symbol(delta as i64, n).unwrap() as i64).sum();
        assert_eq!(total, 0, "Δ = {delta}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn character_is_periodic_and_multiplicative(
        idx in 0usize..7,
        m in 1u64..10_000,
        n in 1u64..10_000,
    ) {
        let d = [2u64, 3, 5, 6, 7, 30, 210][idx];
        let k = quad(d);
        let delta = k.discriminant();
        let chi = |x: u64| kronecker_symbol(delta as i64, x).unwrap();
        prop_assert_eq!(chi(n + delta), chi(n));
        prop_assert_eq!(chi(m * n), chi(m) * chi(n));
        prop_assert_eq!(chi(n), common::kronecker(delta as i64, n));
        prop_assert_eq!(k.character(n), chi(n));
    }
}

#[test]
fn l_values_agree_with_class_number_formula() {
    for d in [2u64, 5, 6, 30, 210] {
        let l = l_function_eval(&quad(d), 1.0, 1e-10).unwrap();
        let oracle = common::l_at_one_class_number(d).unwrap();
        assert!((l.value - oracle).abs() <= l.error_bound + 1e-12, "d={d}");
        assert!(l.error_bound <= 1e-10);
    }
}

#[test]
fn two_routes_agree_within_bounds() {
    let q = NumberField::Rationals;
    let q5: NumberField = "Q(sqrt:5)".parse().unwrap();
    let q6: NumberField = "Q(sqrt:6)".parse().unwrap();
    let cfg = FieldDistanceConfig {
        a: 2.0,
        guard: 1.0,
        ..Default::default()
    };
    for (k1, k2) in [(&q, &q5), (&q5, &q6), (&q, &q6)] {
        let direct = field_distance(k1, k2, &cfg).unwrap();
        let euler = field_distance_euler(k1, k2, 10_000, &cfg).unwrap();
        let diff = (direct.value - euler.value).abs();
        assert!(diff <= direct.error_estimate + euler.error_estimate + 1e-12, "{k1} {k2}: {diff}");
        assert!(diff < 1e-6, "{k1} {k2}: {diff}");
    }

    // Closer to s = 1 the Euler route carries a larger, still honest, bound.
    let near = FieldDistanceConfig {
        a: 1.0,
        guard: 0.2,
        ..Default::default()
    };
    let direct = field_distance(&q, &q5, &near).unwrap();
    let euler = field_distance_euler(&q, &q5, 10_000, &near).unwrap();
    assert!((direct.value - euler.value).abs() <= direct.error_estimate + euler.error_estimate);
}

#[test]
fn euler_route_needs_a_guard() {
    let q5: NumberField = "Q(sqrt:5)".parse().unwrap();
    let cfg = FieldDistanceConfig::default();
    assert!(field_distance_euler(&NumberField::Rationals, &q5, 1000, &cfg).is_err());
}
