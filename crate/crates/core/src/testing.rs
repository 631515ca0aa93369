//! Small fixtures shared by unit tests.

use proptest::prelude::*;

use crate::generators::{generate_graph, Generator};
use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    generate_graph(&Generator::Path { n }, 0).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    generate_graph(&Generator::Cycle { n }, 0).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    generate_graph(&Generator::Star { leaves }, 0).unwrap()
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    generate_graph(&Generator::Grid { rows, cols }, 0).unwrap()
}

/// `K_{a,b}` with side `0..a` and side `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Arbitrary simple graphs on up to `max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n, 0.05f64..0.7).prop_flat_map(|(n, p)| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(p), pairs).prop_map(move |mask| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}
