//! Golden values of the exhaustive sweeps.

use quarter::enumerate::{graphs_by_edge_addition, graphs_by_vertex_extension, GRAPH_COUNTS};
use quarter::graph6;
use quarter::rational::{fmt_rational, rat};
use quarter::turan::{k5_family, minimize_phi, verify_claim_s8, verify_prop_quarter};

#[test]
fn admissible_free_minima() {
    let family = k5_family();
    let golden = [
        (5, 34, 14, "5/17", "D@S"),
        (6, 156, 16, "2/7", "E@T_"),
        (7, 1044, 2, "7/24", "FFHKW"),
    ];
    for (s, graphs, free, min, extremal) in golden {
        let r = verify_prop_quarter(s, &family).unwrap();
        assert!(r.passed(), "s={s}: {:?}", r.violations);
        assert_eq!(r.graph_count, graphs);
        assert_eq!(r.admissible_free_count, free);
        assert_eq!(fmt_rational(&r.min_phi.unwrap()), min);
        assert!(
            r.extremal_graphs.iter().any(|g| g == extremal),
            "s={s}: {:?}",
            r.extremal_graphs
        );
        for g in &r.extremal_graphs {
            let q = graph6::decode(g).unwrap();
            assert_eq!(minimize_phi(&q).unwrap().value, r.min_phi.unwrap());
            assert!(r.min_phi.unwrap() >= rat(1, 4));
        }
    }
}

#[test]
fn no_admissible_free_graph_on_eight_vertices() {
    let r = verify_claim_s8(&k5_family()).unwrap();
    assert!(r.passed());
    assert_eq!(r.graph_count, 12346);
    assert_eq!(r.admissible_free_count, 0);
}

#[test]
fn sweep_counts_match_an_independent_enumeration() {
    let family = k5_family();
    for s in 5..=7 {
        let edge_route = graphs_by_edge_addition(s).unwrap().len();
        assert_eq!(edge_route, GRAPH_COUNTS[s]);
        assert_eq!(graphs_by_vertex_extension(s).unwrap().len(), edge_route);
        assert_eq!(verify_prop_quarter(s, &family).unwrap().graph_count, edge_route);
    }
}
