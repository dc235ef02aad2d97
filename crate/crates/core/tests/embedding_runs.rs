//! Batch runs of the embedding from JSON configurations.

use quarter::embedding::{run_batch, EmbedConfig};
use quarter::rational::rat;
use quarter::turan::WeightedCompleteGraph;

#[test]
fn batch_is_deterministic_and_reports_failures() {
    let cfg: EmbedConfig =
        serde_json::from_str(r#"{"h":"K3","block_size":600,"eps1":"1/5","lambda":0.1,"seed_start":3,"seed_count":6}"#)
            .unwrap();
    assert_eq!(cfg.p_in, 0.25);
    assert_eq!(cfg.beta, 0.2);
    let a = run_batch(&cfg).unwrap();
    assert_eq!(a, run_batch(&cfg).unwrap());
    assert_eq!(a.iter().map(|r| r.seed).collect::<Vec<_>>(), (3..9).collect::<Vec<_>>());
    for r in &a {
        assert_eq!(r.success, r.failure_step.is_none());
        assert_eq!(r.success, r.verified);
    }
    assert!(a.iter().any(|r| r.success));
}

#[test]
fn pattern_from_graph6_and_custom_reduced_graph() {
    // The path on three vertices with a thin edge on one side.
    let mut r = WeightedCompleteGraph::constant(3, rat(3, 10));
    r.set(0, 1, rat(1, 10));
    let cfg = EmbedConfig {
        h: "Bg".into(),
        reduced: Some(r),
        block_size: 400,
        p_in: 0.25,
        eps1: rat(1, 5),
        lambda: 0.1,
        beta: 0.2,
        delta: 0.0,
        seed_start: 0,
        seed_count: 5,
    };
    let rows = run_batch(&cfg).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.success == r.verified));
}

#[test]
fn mismatched_reduced_graph_is_rejected() {
    let cfg = EmbedConfig {
        h: "K4".into(),
        reduced: Some(WeightedCompleteGraph::constant(3, rat(1, 2))),
        block_size: 10,
        p_in: 0.25,
        eps1: rat(1, 5),
        lambda: 0.1,
        beta: 0.2,
        delta: 0.0,
        seed_start: 0,
        seed_count: 1,
    };
    assert!(run_batch(&cfg).is_err());
}
