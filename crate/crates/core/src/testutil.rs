use proptest::prelude::*;

use crate::graph::DenseGraph;

pub fn graph_from_bits(n: usize, bits: &[bool]) -> DenseGraph {
    let mut g = DenseGraph::empty(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = DenseGraph> {
    arb_graph_range(1, max_n)
}

pub fn arb_graph_range(min_n: usize, max_n: usize) -> impl Strategy<Value = DenseGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}
