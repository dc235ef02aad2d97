//! Reduction traces on random rational weightings.

use num_traits::{One, Zero};
use proptest::prelude::*;
use quarter::admissibility::{find_admissible_subgraph, Host};
use quarter::rational::{rat, Rational};
use quarter::turan::reduce::{is_block_uniform, reduce};
use quarter::turan::{k5_family, quotient, ReductionTrace, WeightedCompleteGraph};

fn weighting() -> impl Strategy<Value = WeightedCompleteGraph> {
    (2usize..=8).prop_flat_map(|k| {
        let value = prop_oneof![
            (0i128..=12).prop_map(|n| rat(n, 12)),
            Just(Rational::one()),
            Just(Rational::one()),
            (0i128..=4).prop_map(|n| rat(n, 8)),
        ];
        prop::collection::vec(value, k * (k - 1) / 2)
            .prop_map(move |w| WeightedCompleteGraph::from_pairs(k, w).unwrap())
    })
}

fn admissible_free(w: &WeightedCompleteGraph, family: &[quarter::DenseGraph]) -> bool {
    find_admissible_subgraph(&Host::Weighted(w, Rational::zero()), family)
        .unwrap()
        .is_none()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn admissibility_freeness_survives_every_step(r in weighting()) {
        let family = k5_family();
        prop_assume!(admissible_free(&r, &family));
        let out = reduce(&r).unwrap();
        for (i, state) in out.trace.states().iter().enumerate() {
            prop_assert!(admissible_free(state, &family), "state {} of {:?}", i, out.trace.steps);
        }
    }

    #[test]
    fn traces_are_sound_and_end_block_uniform(r in weighting()) {
        let out = reduce(&r).unwrap();
        prop_assert!(out.trace.check().is_empty(), "{:?}", out.trace.check());
        prop_assert_eq!(out.trace.final_state(), out.weights.clone());
        prop_assert!(is_block_uniform(&out.weights, &out.partition));
        let q = quotient(&out.partition, &out.weights).unwrap();
        prop_assert!(out.weights.total() <= r.total());
        prop_assert_eq!(q.phi().iter().fold(Rational::zero(), |a, b| a + b), Rational::one());
        let json = serde_json::to_string(&out.trace).unwrap();
        let back: ReductionTrace = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.final_state(), out.weights);
    }
}
