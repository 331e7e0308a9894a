//! Randomized checks of the monoid, incidence-algebra and spectrum laws.

mod common;

use proptest::prelude::*;

fn holds(law: common::Law, seed: u64) -> Result<(), TestCaseError> {
    law(seed).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        holds(common::associativity, seed)?;
    }

    #[test]
    fn factorization_is_unique_up_to_commutation(seed in any::<u64>()) {
        holds(common::unique_factorization, seed)?;
    }

    #[test]
    fn mobius_inverts_zeta(seed in any::<u64>()) {
        holds(common::mobius_inverts_zeta, seed)?;
    }

    #[test]
    fn mangoldt_sums_to_length(seed in any::<u64>()) {
        holds(common::mangoldt_sums_to_length, seed)?;
    }

    #[test]
    fn big_omega_times_mobius_is_walk_indicator(seed in any::<u64>()) {
        holds(common::big_omega_mobius_is_walk_indicator, seed)?;
    }

    #[test]
    fn mobius_twist_inverts_multiplicative_functions(seed in any::<u64>()) {
        holds(common::mobius_twist_inverts, seed)?;
    }

    #[test]
    fn left_division_matches_word_search(seed in any::<u64>()) {
        holds(common::left_division, seed)?;
    }

    #[test]
    fn fingerprints_survive_relabelling(seed in any::<u64>()) {
        holds(common::fingerprint_relabelling, seed)?;
    }

    #[test]
    fn pathsum_expansion_keeps_spectrum(seed in any::<u64>()) {
        holds(common::pathsum_keeps_spectrum, seed)?;
    }
}
