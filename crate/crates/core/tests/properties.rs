//! Property tests for the geometric and arc-dynamics invariants.

use std::f64::consts::{PI, TAU};

use midarc::analysis::{
    convergence_report, equilateral_defect, sample_triangle, similarity, ConvergenceReport,
};
use midarc::arcs::{
    arcs_of, closed_form_coefficients, deviation, iterate_arcs, limit_triangles,
    rational_deviation, rational_drift, rational_iterate, rational_step, step_angular, step_arcs,
    to_angular, ArcTriple, RationalArcTriple,
};
use midarc::classic::{circumradius_from_sides, excentral, morley};
use midarc::euclid::{angles_of, angular_position, circumcircle, wrap_pi, Circle, Point};
use midarc::suite::run_suite;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn triangle() -> impl Strategy<Value = midarc::euclid::LabeledTriangle> {
    (any::<u64>(), 0u64..1_000).prop_map(|(seed, i)| sample_triangle(seed, i, 0.1).unwrap())
}

/// Positive fractions with a common denominator, summing to one.
fn fractions() -> impl Strategy<Value = RationalArcTriple> {
    (1i64..10_000, 1i64..10_000, 1i64..10_000).prop_map(|(a, b, c)| {
        let d = a + b + c;
        RationalArcTriple::from_ratios([(a, d), (b, d), (c, d)]).unwrap()
    })
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn circumcircle_passes_through_vertices_for_1000_samples() {
    for i in 0..1000 {
        let t = sample_triangle(7, i, 0.1).unwrap();
        let c = circumcircle(&t);
        for p in t.vertices() {
            assert!((p.distance(c.center) - c.radius).abs() <= 1e-12 * c.radius);
        }
    }
}

#[test]
fn step_consistency_for_1000_samples() {
    for i in 0..1000 {
        let t = to_angular(&sample_triangle(11, i, 0.1).unwrap()).unwrap();
        let a = arcs_of(&step_angular(&t));
        let b = step_arcs(&arcs_of(&t));
        for (x, y) in a.components().iter().zip(b.components()) {
            assert!((x - y).abs() <= 1e-12, "sample {i}: {x} vs {y}");
        }
    }
}

#[test]
fn parity_coefficients_are_integers_summing_to_power_of_two() {
    for n in 1..=200u32 {
        let k = closed_form_coefficients(n);
        assert!(k.own >= BigInt::from(0) && k.other > BigInt::from(0));
        assert_eq!(&k.own + &k.other * 2, k.denominator);
        // adjacent ranks differ by one step of the averaging map
        let next = closed_form_coefficients(n + 1);
        assert_eq!(next.own, &k.other * 2);
        assert_eq!(next.other, &k.own + &k.other);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn angular_position_inverts_point_at(theta in 0.0..TAU, r in 0.1f64..10.0, cx in -5.0f64..5.0, cy in -5.0f64..5.0) {
        let c = Circle::new(Point::new(cx, cy), r).unwrap();
        let back = angular_position(&c, c.point_at(theta)).unwrap();
        prop_assert!(wrap_pi(back - theta).abs() <= 1e-12);
    }

    #[test]
    fn angles_sum_to_pi(t in triangle()) {
        prop_assert!((angles_of(&t).sum() - PI).abs() <= 1e-12);
    }

    #[test]
    fn arcs_are_twice_radius_times_angle(t in triangle()) {
        let a = to_angular(&t).unwrap();
        let l = arcs_of(&a);
        let r = a.circle().radius;
        let ang = angles_of(&t);
        for (x, y) in l.components().iter().zip(ang.as_array()) {
            prop_assert!((x - 2.0 * r * y).abs() <= 1e-9);
        }
        prop_assert!((l.components().iter().sum::<f64>() - TAU * r).abs() <= 1e-12 * TAU * r);
    }

    #[test]
    fn contraction_halves_deviation_exactly(f in fractions(), n in 0u32..12) {
        let x = rational_iterate(&f, n);
        let y = rational_step(&x);
        prop_assert_eq!(rational_deviation(&y), rational_deviation(&x) / BigInt::from(2));
        let sum: BigRational = y.fractions().iter().sum();
        prop_assert_eq!(sum, q(1, 1));
    }

    #[test]
    fn rational_closed_form_equals_stepping(f in fractions(), n in 0u32..=30) {
        let stepped = (0..n).fold(f.clone(), |acc, _| rational_step(&acc));
        prop_assert_eq!(rational_iterate(&f, n), stepped);
    }

    #[test]
    fn float_closed_form_equals_stepping(f in fractions(), r in 0.5f64..2.0) {
        let l = f.to_arcs(r).unwrap();
        let mut stepped = l;
        for n in 0..=30 {
            for (x, y) in iterate_arcs(&l, n).components().iter().zip(stepped.components()) {
                prop_assert!((x - y).abs() <= 1e-12 * y);
            }
            stepped = step_arcs(&stepped);
        }
    }

    #[test]
    fn float_contraction(f in fractions()) {
        let mut l = f.to_arcs(1.0).unwrap();
        let d0 = deviation(&l);
        for _ in 0..40 {
            let next = step_arcs(&l);
            prop_assert!((deviation(&next) - deviation(&l) / 2.0).abs() <= 1e-12 * (1.0 + d0));
            prop_assert_eq!(next.circumference, l.circumference);
            l = next;
        }
    }

    #[test]
    fn drift_series_increments(f in fractions(), m in 0u32..20) {
        let n = 2 * m;
        let a = rational_drift(&f, n).unwrap();
        let b = rational_drift(&f, n + 2).unwrap();
        let diff = &f.fractions()[0] - &f.fractions()[1];
        let step = diff / BigInt::from(4u8).pow(m + 1);
        prop_assert_eq!(b.drift_ab - a.drift_ab, step);
        prop_assert_eq!(a.drift_limit, b.drift_limit);
    }

    #[test]
    fn limits_are_antipodal_equilateral(t in triangle()) {
        let a = to_angular(&t).unwrap();
        let (even, odd) = limit_triangles(&a);
        for i in 0..3 {
            prop_assert!(wrap_pi(odd.positions()[i] - even.positions()[i] - PI).abs() <= 1e-9);
        }
        let l = arcs_of(&even);
        for x in l.components() {
            prop_assert!((x - l.circumference / 3.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn morley_is_equilateral_and_parallel_to_even_limit(t in triangle()) {
        let m = morley(&t).unwrap();
        prop_assert!(equilateral_defect(&m) <= 1e-9);
        let (even, _) = limit_triangles(&to_angular(&t).unwrap());
        prop_assert!(similarity(&even.to_labeled().unwrap(), &m).sides_parallel);
    }

    #[test]
    fn excentral_is_twice_the_first_iterate(t in triangle()) {
        let first = step_angular(&to_angular(&t).unwrap()).to_labeled().unwrap();
        let s = similarity(&first, &excentral(&t).unwrap());
        prop_assert!(s.is_similar && s.sides_parallel);
        prop_assert!(s.rotation.abs() <= 1e-9);
        // the mid-arc points bisect the segments from the incenter to the excenters
        prop_assert!((s.ratio - 2.0).abs() <= 1e-9);
    }

    #[test]
    fn heron_matches_circumcircle(t in triangle()) {
        let [a, b, c] = t.side_lengths();
        let r = circumradius_from_sides(a, b, c).unwrap();
        prop_assert!((r - circumcircle(&t).radius).abs() <= 1e-12 * r);
    }

    #[test]
    fn convergence_report_json_round_trips(t in triangle()) {
        let rep = convergence_report(&t, 8).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        let back: ConvergenceReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, rep);
    }
}

#[test]
fn verification_report_json_round_trips() {
    let rep = run_suite(20, 3, 0.1).unwrap();
    let json = serde_json::to_string_pretty(&rep).unwrap();
    let back: midarc::suite::VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn arc_triple_json_round_trips() {
    let l = ArcTriple::new(0.1, 0.2 + 1e-17, 3.0).unwrap();
    let back: ArcTriple = serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
    assert_eq!(back, l);
}
