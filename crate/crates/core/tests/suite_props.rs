mod common;

use common::*;
use numrad_core::linalg::{inner, matrix_abs};
use numrad_core::suite::{
    check_jensen_lemma23, check_lemma43, check_lemma_aujla, check_mixed_schwarz, check_refined_cauchy_schwarz,
    check_scalar_lemma22, check_theorem_main, check_wn_propositions, evaluate_check, run_suite, InequalityId,
    Operands, Params, SuiteConfig,
};
use numrad_core::{ConvexFunctionSpec, Error, NormSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorem_main_on_ginibre_pairs(seed in any::<u64>()) {
        let (sq, plain) = check_theorem_main(
            &gin(seed, 4).scale_real(0.5),
            &gin(seed ^ 1, 4).scale_real(0.5),
            &unit(seed ^ 2, 4),
            ConvexFunctionSpec::exp_m1(0.3).unwrap(),
            0.3,
        )
        .unwrap();
        prop_assert!(sq.min_normalized_slack() >= -1e-9 && plain.min_normalized_slack() >= -1e-9);
        prop_assert!(sq.pass && plain.pass);
    }

    #[test]
    fn lemma22_holds(a in 0.0f64..10.0, b in 0.0f64..10.0, alpha in 0.0f64..=1.0, r in 1.0f64..4.0) {
        let rep = check_scalar_lemma22(a, b, alpha, r).unwrap();
        prop_assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn jensen_on_random_hermitian(seed in any::<u64>()) {
        let rep = check_jensen_lemma23(&hermitian(seed, 5), &unit(seed ^ 3, 5), ConvexFunctionSpec::affine_quad(1.0).unwrap()).unwrap();
        prop_assert!(rep.pass);
    }

    #[test]
    fn jensen_is_exact_on_eigenvectors(seed in any::<u64>()) {
        let h = hermitian(seed, 4);
        let d = numrad_core::linalg::hermitian_eig(&h, 1e-12).unwrap();
        let x = numrad_core::UnitVector::normalize(d.eigenvector(2)).unwrap();
        let rep = check_jensen_lemma23(&h, &x, ConvexFunctionSpec::exp_m1(0.5).unwrap()).unwrap();
        prop_assert!((rep.lhs - rep.rhs).abs() <= 1e-10 * (1.0 + rep.rhs.abs()));
    }

    #[test]
    fn mixed_schwarz_on_random_operators(seed in any::<u64>()) {
        prop_assert!(check_mixed_schwarz(&gin(seed, 4), &unit(seed ^ 4, 4)).unwrap().pass);
    }

    #[test]
    fn mixed_schwarz_is_exact_for_psd_eigenvectors(seed in any::<u64>()) {
        let p = matrix_abs(&gin(seed, 3)).unwrap();
        let d = numrad_core::linalg::hermitian_eig(&p, 1e-12).unwrap();
        let x = numrad_core::UnitVector::normalize(d.eigenvector(1)).unwrap();
        let rep = check_mixed_schwarz(&p, &x).unwrap();
        prop_assert!((rep.lhs - rep.rhs).abs() <= 1e-9 * (1.0 + rep.rhs));
    }

    #[test]
    fn lemma43_on_random_operators(seed in any::<u64>(), n in 1usize..=6) {
        prop_assert!(check_lemma43(&gin(seed, n)).unwrap().pass);
    }

    #[test]
    fn aujla_on_random_psd_pairs(seed in any::<u64>()) {
        let a = matrix_abs(&gin(seed, 5)).unwrap();
        let b = matrix_abs(&gin(seed ^ 5, 5)).unwrap();
        prop_assert!(check_lemma_aujla(&a, &b, ConvexFunctionSpec::exp_m1(0.5).unwrap()).unwrap().pass);
        let same = check_lemma_aujla(&a, &a, ConvexFunctionSpec::power(2.0).unwrap()).unwrap();
        prop_assert!((same.lhs - same.rhs).abs() <= 1e-9 * (1.0 + same.rhs));
    }

    #[test]
    fn refined_cauchy_schwarz_on_random_vectors(seed in any::<u64>()) {
        let a = numrad_core::random::complex_gaussian_vector(&mut rng(seed), 6);
        let b = numrad_core::random::complex_gaussian_vector(&mut rng(seed ^ 6), 6);
        let rep = check_refined_cauchy_schwarz(&a, &b, &unit(seed ^ 7, 6)).unwrap();
        prop_assert!(rep.pass);
        prop_assert_eq!(rep.chain.len(), 3);
        prop_assert!((rep.chain[0] - inner(&a, &b).norm()).abs() < 1e-12 * (1.0 + rep.chain[0]));
    }

    #[test]
    fn wn_propositions_on_random_operators(seed in any::<u64>()) {
        let t = gin(seed, 4).scale_real(0.4);
        let (alpha, mean) = check_wn_propositions(&t, NormSpec::SchattenP(4.0), 2.0, 0.3).unwrap();
        prop_assert!(alpha.pass && mean.pass, "{:?} {:?}", alpha, mean);
    }

    #[test]
    fn pointwise_forms_hold_for_every_vector(seed in any::<u64>(), n in 2usize..=6, r in 1.0f64..3.0, alpha in 0.1f64..0.9) {
        let t = gin(seed, n).scale_real(0.5);
        let params = Params::default().with_r(r).with_alpha(alpha);
        for k in 0..4 {
            let ops = Operands::single(t.clone()).with_x(unit(seed.wrapping_add(k), n));
            for id in [InequalityId::Prop33AlphaPointwise, InequalityId::Prop33MeanPointwise, InequalityId::Lem16] {
                prop_assert!(evaluate_check(id, &ops, &params).unwrap().pass);
            }
        }
    }
}

#[test]
fn cor12_never_exceeds_drag2_across_a_restricted_run() {
    let config = SuiteConfig {
        trials: 200,
        ids: vec![InequalityId::Cor12Pow, InequalityId::Drag2],
        ..SuiteConfig::default()
    };
    let report = run_suite(&config).unwrap();
    assert!(report.passed());
    // within each (trial, r) pair the two rhs values compare directly
    for trial in 0..config.trials {
        let ops = numrad_core::suite::trial_operands(&config, trial).unwrap().operands;
        for r in &config.r_grid {
            let p = Params::default().with_r(*r);
            let cor = evaluate_check(InequalityId::Cor12Pow, &ops, &p).unwrap();
            let drag = evaluate_check(InequalityId::Drag2, &ops, &p).unwrap();
            assert!(cor.rhs <= drag.rhs + 1e-9, "trial {trial}, r {r}");
        }
    }
}

#[test]
fn empty_trial_config_is_an_error() {
    let config = SuiteConfig { trials: 0, ..SuiteConfig::default() };
    assert!(matches!(run_suite(&config), Err(Error::InvalidConfig(_))));
}

#[test]
fn every_id_evaluates_on_one_trial() {
    let config = SuiteConfig { trials: 1, dims: vec![3], ..SuiteConfig::default() };
    let ops = numrad_core::suite::trial_operands(&config, 0).unwrap();
    for id in InequalityId::all() {
        let operands = if id == InequalityId::Lem23 {
            Operands::hermitian(ops.operands.h.clone().unwrap()).with_x(ops.operands.x.clone().unwrap())
        } else {
            ops.operands.clone()
        };
        let params = Params::default().with_f(ConvexFunctionSpec::exp_m1(0.5).unwrap());
        let rep = evaluate_check(id, &operands, &params).unwrap();
        assert!(rep.pass, "{id}: {rep:?}");
        assert_eq!(rep.chain.is_empty(), !id.is_chain(), "{id}");
    }
}
