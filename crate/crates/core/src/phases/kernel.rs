//! Neighborhood-domination test for phase one, written against a radius-2
//! view so the node program and the direct path share it.

use std::collections::BTreeMap;

use crate::graph::Vertex;

/// Decides whether some `A ⊆ V \ {v}` with `|A| ≤ k` dominates `N(v)`.
///
/// `neighbors` is `N(v)` and `second_hop[j]` is `N(neighbors[j])`; this is
/// exactly what `v` knows after two rounds. Every useful candidate lies in
/// `N[N(v)] \ {v}`. The search branches on an uncovered neighbor with the
/// fewest candidate dominators, so it explores at most `Δ^k` leaves.
pub fn dominable_within(v: Vertex, neighbors: &[Vertex], second_hop: &[&[Vertex]], k: usize) -> bool {
    let deg = neighbors.len();
    if deg <= k {
        return true;
    }
    let words = deg.div_ceil(64);

    // Coverage of N(v) by each candidate, as bitsets over neighbor indices.
    let mut cover: BTreeMap<Vertex, Vec<u64>> = BTreeMap::new();
    for (j, (&w, hop)) in neighbors.iter().zip(second_hop).enumerate() {
        for c in std::iter::once(w).chain(hop.iter().copied()) {
            if c != v {
                cover.entry(c).or_insert_with(|| vec![0; words])[j / 64] |= 1 << (j % 64);
            }
        }
    }
    // Candidates able to dominate neighbor j: N[neighbors[j]] \ {v}.
    let dominators: Vec<Vec<&Vec<u64>>> = neighbors
        .iter()
        .zip(second_hop)
        .map(|(&w, hop)| {
            std::iter::once(w)
                .chain(hop.iter().copied())
                .filter(|&c| c != v)
                .map(|c| &cover[&c])
                .collect()
        })
        .collect();

    let mut uncovered = vec![0u64; words];
    for j in 0..deg {
        uncovered[j / 64] |= 1 << (j % 64);
    }
    search(&uncovered, &dominators, k)
}

fn search(uncovered: &[u64], dominators: &[Vec<&Vec<u64>>], budget: usize) -> bool {
    let pick = uncovered
        .iter()
        .enumerate()
        .flat_map(|(word, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| word * 64 + b))
        .min_by_key(|&j| dominators[j].len());
    let Some(j) = pick else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    dominators[j].iter().any(|cover| {
        let rest: Vec<u64> = uncovered.iter().zip(cover.iter()).map(|(u, c)| u & !c).collect();
        search(&rest, dominators, budget - 1)
    })
}
