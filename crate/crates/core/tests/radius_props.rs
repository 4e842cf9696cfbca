mod common;

use std::f64::consts::PI;

use common::*;
use numrad_core::radius::{RotationFamily, DEFAULT_TOL};
use numrad_core::{
    generalized_numerical_radius, numerical_radius, numerical_radius_oracle, operator_norm, rotation_profile,
    ComplexMatrix, NormSpec, Profile,
};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn omega(t: &ComplexMatrix) -> f64 {
    numerical_radius(t, TOL).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bounded_by_half_norm_and_norm(seed in any::<u64>(), n in 1usize..=6) {
        let t = gin(seed, n);
        let w = omega(&t);
        let norm = operator_norm(&t).unwrap();
        prop_assert!(0.5 * norm <= w + 1e-9 && w <= norm + 1e-9);
    }

    #[test]
    fn dominates_every_sampled_quadratic_form(seed in any::<u64>(), n in 1usize..=6) {
        let t = gin(seed, n);
        let w = omega(&t);
        for k in 0..8 {
            let x = unit(seed.wrapping_add(k), n);
            prop_assert!(t.quadratic_form(x.components()).unwrap().norm() <= w + 1e-9);
        }
    }

    #[test]
    fn homogeneous_and_unitarily_similar_invariant(seed in any::<u64>(), n in 1usize..=5, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let t = gin(seed, n);
        let w = omega(&t);
        let z = c(re, im);
        prop_assert!((omega(&t.scale(z)) - z.norm() * w).abs() <= 1e-8 * (1.0 + z.norm() * w));
        let u = unitary(seed ^ 9, n);
        let similar = u.matmul(&t).unwrap().matmul(&u.adjoint()).unwrap();
        prop_assert!((omega(&similar) - w).abs() <= 1e-8 * (1.0 + w));
        prop_assert!((omega(&t.adjoint()) - w).abs() <= 1e-8 * (1.0 + w));
    }

    #[test]
    fn certificate_is_reported_within_tolerance(seed in any::<u64>(), n in 1usize..=6) {
        let t = gin(seed, n);
        let r = numerical_radius(&t, DEFAULT_TOL).unwrap();
        prop_assert!(r.certified_error <= DEFAULT_TOL);
        prop_assert!((0.0..2.0 * PI).contains(&r.theta_star));
        let at_star = rotation_profile(&t, r.theta_star, Profile::MaxEig).unwrap();
        prop_assert!((at_star - r.value).abs() <= 1e-12 * (1.0 + r.value));
    }

    #[test]
    fn agrees_with_the_ascent_oracle(seed in any::<u64>(), n in 1usize..=6) {
        let t = gin(seed, n);
        let w = omega(&t);
        let oracle = numerical_radius_oracle(&t, 24, 60, seed).unwrap();
        prop_assert!(oracle <= w + 1e-9);
        prop_assert!((w - oracle).abs() <= 1e-5, "{} vs {}", w, oracle);
    }

    #[test]
    fn operator_norm_radius_is_the_numerical_radius(seed in any::<u64>(), n in 1usize..=6) {
        let t = gin(seed, n);
        let wn = generalized_numerical_radius(&t, NormSpec::Operator, 1e-11).unwrap().value;
        let w = numerical_radius(&t, 1e-11).unwrap().value;
        prop_assert!((wn - w).abs() <= 2e-10, "{} vs {}", wn, w);
    }

    #[test]
    fn profiles_are_periodic(seed in any::<u64>(), n in 1usize..=5, theta in 0.0f64..(2.0 * PI)) {
        let t = gin(seed, n);
        let f = RotationFamily::new(&t);
        let a = f.profile(theta, Profile::MaxEig).unwrap();
        prop_assert!((a - f.profile(theta + 2.0 * PI, Profile::MaxEig).unwrap()).abs() <= 1e-10 * (1.0 + a));
        for spec in [NormSpec::Operator, NormSpec::Trace, NormSpec::SchattenP(3.0)] {
            let b = f.profile(theta, Profile::Norm(spec)).unwrap();
            let shifted = f.profile(theta + PI, Profile::Norm(spec)).unwrap();
            prop_assert!((b - shifted).abs() <= 1e-10 * (1.0 + b));
        }
    }

    #[test]
    fn profiles_are_lipschitz(seed in any::<u64>(), n in 1usize..=5, a in 0.0f64..(2.0 * PI), b in 0.0f64..(2.0 * PI)) {
        let t = gin(seed, n);
        let l = operator_norm(&t).unwrap();
        let pa = rotation_profile(&t, a, Profile::MaxEig).unwrap();
        let pb = rotation_profile(&t, b, Profile::MaxEig).unwrap();
        prop_assert!((pa - pb).abs() <= l * (a - b).abs() + 1e-10 * (1.0 + l));
    }

    #[test]
    fn hermitian_generalized_radius_is_the_norm(seed in any::<u64>(), n in 2usize..=5) {
        let h = hermitian(seed, n);
        for spec in [NormSpec::Operator, NormSpec::Trace, NormSpec::Frobenius, NormSpec::KyFan(2)] {
            let wn = generalized_numerical_radius(&h, spec, 1e-10).unwrap().value;
            let nh = numrad_core::evaluate_norm(&h, spec).unwrap();
            prop_assert!((wn - nh).abs() <= 1e-9 * (1.0 + nh));
        }
    }
}

#[test]
fn nilpotent_and_normal_witnesses() {
    use numrad_core::suite::{generate, EnsembleKind, EnsembleSpec};
    for t in generate(&EnsembleSpec { kind: EnsembleKind::Nilpotent, n: 2, seed: 5, trials: 20 }).unwrap() {
        let w = numerical_radius(&t, DEFAULT_TOL).unwrap().value;
        assert!((w - 0.5 * operator_norm(&t).unwrap()).abs() <= 1e-8);
    }
    for n in 1..=6 {
        for t in generate(&EnsembleSpec { kind: EnsembleKind::Normal, n, seed: 6, trials: 5 }).unwrap() {
            let w = numerical_radius(&t, DEFAULT_TOL).unwrap().value;
            assert!((w - operator_norm(&t).unwrap()).abs() <= 1e-8);
        }
    }
}
