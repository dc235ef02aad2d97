//! Intersection graphs of curves never contain an induced weak-subdivision of K5.

use quarter::geometry::{intersection_graph, random_curves, RandomCurves};
use quarter::subdivision::{contains_induced_weak_subdivision, SearchVerdict};

fn check(n: usize, seeds: std::ops::Range<u64>, step: Option<i64>) -> (usize, usize) {
    let (mut absent, mut inconclusive) = (0, 0);
    for seed in seeds {
        let a = random_curves(
            &RandomCurves {
                n,
                segments: 4,
                bbox: 10_000,
                step,
            },
            seed,
        )
        .unwrap();
        match contains_induced_weak_subdivision(&intersection_graph(&a), 5, 2_000_000).unwrap() {
            SearchVerdict::Found { subset, .. } => panic!("seed {seed}: witness on curves {subset:?}"),
            SearchVerdict::Absent => absent += 1,
            SearchVerdict::Inconclusive => inconclusive += 1,
        }
    }
    (absent, inconclusive)
}

#[test]
fn small_arrangements() {
    for n in 1..=12 {
        let (absent, _) = check(n, 0..20, None);
        assert_eq!(absent, 20);
    }
}

#[test]
fn arrangements_large_enough_to_hold_the_pattern() {
    // Short steps keep the graphs sparse enough that the search is not trivial.
    for n in 15..=18 {
        let (absent, inconclusive) = check(n, 100..110, Some(2500));
        assert!(absent > 0, "n={n}: all {inconclusive} searches inconclusive");
    }
}
