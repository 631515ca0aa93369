//! Centralized implementation of the three phases. Same decisions as the
//! node program, computed with global knowledge; used as a fast path and to
//! cross-check the message-passing run.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::graph::{Graph, Vertex};

use super::kernel::dominable_within;

/// Whether `N(v)` can be dominated by at most `k` vertices other than `v`.
pub fn neighborhood_dominable_within(g: &Graph, v: Vertex, k: usize) -> bool {
    let hops: Vec<&[Vertex]> = g.neighbors(v).iter().map(|&w| g.neighbors(w)).collect();
    dominable_within(v, g.neighbors(v), &hops, k)
}

/// Vertices whose open neighborhood cannot be dominated by three other
/// vertices.
pub fn phase1_d1(g: &Graph) -> BTreeSet<Vertex> {
    g.vertices()
        .filter(|&v| !neighborhood_dominable_within(g, v, 3))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairSelection {
    pub w: BTreeSet<Vertex>,
    pub b: BTreeMap<Vertex, BTreeSet<Vertex>>,
    pub d2: BTreeSet<Vertex>,
}

/// Selects every pair of vertices sharing at least `threshold` red
/// neighbors. Counts, for every red vertex, all pairs of its neighbors.
pub fn phase2_d2(g: &Graph, red: &BTreeSet<Vertex>, threshold: usize) -> PairSelection {
    let mut shared: HashMap<(Vertex, Vertex), usize> = HashMap::new();
    for &w in red {
        let nbrs = g.neighbors(w);
        for (i, &u) in nbrs.iter().enumerate() {
            for &z in &nbrs[i + 1..] {
                *shared.entry((u, z)).or_default() += 1;
            }
        }
    }
    let mut selection = PairSelection::default();
    for (&(u, z), &count) in &shared {
        if count >= threshold {
            selection.b.entry(u).or_default().insert(z);
            selection.b.entry(z).or_default().insert(u);
        }
    }
    selection.w = selection.b.keys().copied().collect();
    for (&v, members) in &selection.b {
        selection.d2.insert(v);
        selection.d2.extend(members);
    }
    selection
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GreedyOutcome {
    /// `Δ_i` for every level `i` in `0..=cap`.
    pub deltas: BTreeMap<usize, BTreeSet<Vertex>>,
    /// `|R_i|`: red vertices when level `i` starts.
    pub r_sizes: BTreeMap<usize, usize>,
    /// Maximum residual degree when level `i` starts.
    pub max_residual: BTreeMap<usize, usize>,
    /// Vertices still red after level 0; they select themselves.
    pub cleanup: BTreeSet<Vertex>,
}

/// Residual-degree greedy, levels `cap` down to `0`. At level `i` every red
/// vertex with a candidate of residual degree exactly `i` in its closed
/// neighborhood elects the minimum-id candidate.
pub fn phase3_greedy(g: &Graph, red: &BTreeSet<Vertex>, cap: usize) -> GreedyOutcome {
    let mut is_red = vec![false; g.n()];
    for &v in red {
        is_red[v] = true;
    }
    let mut out = GreedyOutcome::default();
    for level in (0..=cap).rev() {
        let residual: Vec<usize> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().filter(|&&u| is_red[u]).count())
            .collect();
        out.max_residual
            .insert(level, residual.iter().copied().max().unwrap_or(0));
        out.r_sizes.insert(level, is_red.iter().filter(|&&r| r).count());

        let delta: BTreeSet<Vertex> = g
            .vertices()
            .filter(|&v| is_red[v])
            .filter_map(|v| {
                std::iter::once(v)
                    .chain(g.neighbors(v).iter().copied())
                    .filter(|&u| residual[u] == level)
                    .min()
            })
            .collect();
        for &u in &delta {
            is_red[u] = false;
            for &x in g.neighbors(u) {
                is_red[x] = false;
            }
        }
        out.deltas.insert(level, delta);
    }
    out.cleanup = g.vertices().filter(|&v| is_red[v]).collect();
    out
}

pub(crate) fn red_after(g: &Graph, green: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let mut dominated = vec![false; g.n()];
    for &v in green {
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    g.vertices().filter(|&v| !dominated[v]).collect()
}
