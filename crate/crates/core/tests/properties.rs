use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use superlevel::branch::ConfigJson;
use superlevel::hyperelliptic::hyperelliptic_action;
use superlevel::symplectic::{random_symplectic, symplectic_inverse};
use superlevel::verify::{random_configuration, random_weil_ratio};
use superlevel::{
    build_basis, census_sum, component_count_formula, is_symplectic, monodromy_cycles, BranchConfiguration,
    ExactRational, Permutation, Prime, SymplecticForm,
};

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|p| Prime::new(p).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_symplectic_group_laws(seed in any::<u64>(), g in 1usize..4, p in prop::sample::select(vec![2u32, 3, 5])) {
        let form = SymplecticForm::standard(g, Prime::new(p).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_symplectic(&mut rng, &form, 6);
        let b = random_symplectic(&mut rng, &form, 6);
        prop_assert!(is_symplectic(&(&a * &b), &form).unwrap());
        let inv = symplectic_inverse(&a, &form);
        prop_assert!((&a * &inv).is_identity());
        prop_assert_eq!(a.determinant().value(), 1);
    }

    #[test]
    fn monodromy_composite_is_identity(seed in any::<u64>(), p in prime()) {
        let cfg = random_configuration(&mut ChaCha8Rng::seed_from_u64(seed), p);
        let d = monodromy_cycles(&cfg);
        prop_assert_eq!(d.cycles.len(), cfg.branch_count());
        prop_assert!(d.composite().unwrap().is_identity());
    }

    #[test]
    fn weil_ratio_is_a_sign(seed in any::<u64>(), p in prime()) {
        let (r, _) = random_weil_ratio(&mut ChaCha8Rng::seed_from_u64(seed), p).unwrap();
        let expected = if p.get() == 2 { -1 } else { 1 };
        prop_assert_eq!(r, ExactRational::from_integer(expected.into()));
    }

    #[test]
    fn config_json_round_trip(seed in any::<u64>(), p in prime()) {
        let cfg = random_configuration(&mut ChaCha8Rng::seed_from_u64(seed), p);
        let text = serde_json::to_string(&cfg.to_json()).unwrap();
        let back: ConfigJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(BranchConfiguration::from_json(&back).unwrap(), cfg);
    }

    #[test]
    fn hyperelliptic_action_is_a_homomorphism((g, s, t) in (2usize..6).prop_flat_map(|g| (Just(g), permutation(2 * g + 2), permutation(2 * g + 2)))) {
        let basis = build_basis(g).unwrap();
        let ms = hyperelliptic_action(&basis, &s).unwrap();
        let mt = hyperelliptic_action(&basis, &t).unwrap();
        prop_assert_eq!(hyperelliptic_action(&basis, &(&s * &t)).unwrap(), &ms * &mt);
        prop_assert!(is_symplectic(&ms, &SymplecticForm::standard(g, Prime::TWO)).unwrap());
        prop_assert_eq!(ms.is_identity(), s.is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn formula_equals_census(g in 1u32..=40) {
        prop_assert_eq!(component_count_formula(g).unwrap(), census_sum(g).unwrap());
    }
}
