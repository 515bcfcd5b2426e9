use proptest::prelude::*;

use crate::graph::{Graph, GraphBuilder};

/// Arbitrary simple graph on at most `max_n` vertices.
pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut b = GraphBuilder::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        b.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            b.build()
        })
    })
}
