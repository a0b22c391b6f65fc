use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pptcost::gaussian::{
    binegativity_covariance, gaussian_log_negativity, pt_covariance, random_covariance, random_symplectic,
    symplectic_eigenvalues, symplectic_form, two_mode_squeezed, williamson, CovarianceMatrix,
};

fn split_strategy() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binegativity_covariance_is_physical(modes in split_strategy(), seed in any::<u64>(), strength in 0.0f64..1.2) {
        let g = random_covariance(modes.0, modes.1, seed, strength).unwrap();
        let bi = binegativity_covariance(&g).unwrap();
        prop_assert!(bi.uncertainty_margin >= -1e-8, "margin {}", bi.uncertainty_margin);
        if bi.corrections.iter().all(|&p| p == 0.0) {
            let diff = (bi.covariance.data() - g.data()).amax();
            prop_assert!(diff <= 1e-8 * g.data().amax().max(1.0));
        }
    }

    #[test]
    fn williamson_post_conditions(modes in split_strategy(), seed in any::<u64>(), strength in 0.0f64..1.0) {
        let g = random_covariance(modes.0, modes.1, seed, strength).unwrap();
        let n = modes.0 + modes.1;
        let w = williamson(g.data()).unwrap();
        let sigma = symplectic_form(n);
        let scale = g.data().amax();
        prop_assert!((&w.s * &sigma * w.s.transpose() - &sigma).amax() < 1e-9 * scale.max(1.0));
        prop_assert!((w.reconstruct() - g.data()).amax() <= 1e-8 * scale);
        let values = symplectic_eigenvalues(g.data()).unwrap();
        for (a, b) in w.values.iter().zip(&values) {
            prop_assert!((a - b).abs() <= 1e-8 * b.max(1.0));
            prop_assert!(*b >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn symplectic_invariance(modes in split_strategy(), seed in any::<u64>()) {
        let g = random_covariance(modes.0, modes.1, seed, 0.7).unwrap();
        let s = random_symplectic(modes.0 + modes.1, 0.4, &mut ChaCha8Rng::seed_from_u64(seed ^ 0xabc));
        let moved = s.transpose() * g.data() * &s;
        let before = symplectic_eigenvalues(g.data()).unwrap();
        let after = symplectic_eigenvalues(&moved).unwrap();
        for (a, b) in before.iter().zip(&after) {
            prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0));
        }
    }

    #[test]
    fn pt_is_an_involution(modes in split_strategy(), seed in any::<u64>()) {
        let g = random_covariance(modes.0, modes.1, seed, 0.8).unwrap();
        let once = CovarianceMatrix::new(pt_covariance(&g), modes);
        // PΓP may be unphysical; apply the reflection by hand when it is
        let p = pptcost::gaussian::mirror_reflection(modes.0, modes.1).unwrap();
        let twice = &p * pt_covariance(&g) * &p;
        prop_assert_eq!(&twice, g.data());
        if let Ok(once) = once {
            prop_assert_eq!(&pt_covariance(&once), g.data());
        }
    }

    #[test]
    fn log_negativity_additive_over_direct_sums(seed in any::<u64>()) {
        let g1 = random_covariance(1, 1, seed, 0.9).unwrap();
        let g2 = random_covariance(1, 1, seed.wrapping_add(17), 0.9).unwrap();
        let sum = g1.direct_sum(&g2).unwrap();
        let lhs = gaussian_log_negativity(&sum).unwrap();
        let rhs = gaussian_log_negativity(&g1).unwrap() + gaussian_log_negativity(&g2).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }
}

#[test]
fn tms_log_negativity_matches_analytic() {
    for r in [0.5, 1.0, 2.0] {
        let ln = gaussian_log_negativity(&two_mode_squeezed(r).unwrap()).unwrap();
        let expected = 2.0 * r * std::f64::consts::LOG2_E;
        assert!((ln - expected).abs() < 1e-9, "r={r}: {ln} vs {expected}");
    }
}

#[test]
fn tms_williamson_values_are_one() {
    let w = williamson(two_mode_squeezed(1.0).unwrap().data()).unwrap();
    for x in w.values {
        assert!((x - 1.0).abs() < 1e-9);
    }
    let vpt = symplectic_eigenvalues(&pt_covariance(&two_mode_squeezed(0.7).unwrap())).unwrap();
    assert!((vpt[0] - (-1.4f64).exp()).abs() < 1e-10);
}
