//! Necessary-condition screening for class membership. An empty report means
//! no violation was found, not that the graph is in the class: there is no
//! planarity test here.

use std::fmt;

use serde::Serialize;

use crate::class::GraphClass;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SanityViolation {
    /// `|E| > bound` for the class's Euler-type edge bound.
    TooManyEdges {
        edges: usize,
        bound: usize,
        rule: &'static str,
    },
    NotBipartite,
    HasTriangle,
    GirthTooSmall {
        girth: usize,
        required: usize,
    },
}

impl fmt::Display for SanityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SanityViolation::TooManyEdges { edges, bound, rule } => {
                write!(f, "{edges} edges exceed {rule} = {bound}")
            }
            SanityViolation::NotBipartite => f.write_str("graph is not bipartite"),
            SanityViolation::HasTriangle => f.write_str("graph contains a triangle"),
            SanityViolation::GirthTooSmall { girth, required } => {
                write!(f, "girth {girth} < {required}")
            }
        }
    }
}

pub fn check_class_sanity(g: &Graph, class: GraphClass) -> Vec<SanityViolation> {
    let n = g.n();
    let m = g.edge_count();
    let mut report = Vec::new();
    let edge_bound = |bound: usize, rule: &'static str, report: &mut Vec<SanityViolation>| {
        if m > bound {
            report.push(SanityViolation::TooManyEdges { edges: m, bound, rule });
        }
    };

    if n >= 3 {
        edge_bound(3 * n - 6, "3|V|-6", &mut report);
    }
    match class {
        GraphClass::Planar => {}
        GraphClass::BipartitePlanar => {
            if n >= 3 {
                edge_bound(2 * n - 4, "2|V|-4", &mut report);
            }
            if !is_bipartite(g) {
                report.push(SanityViolation::NotBipartite);
            }
        }
        GraphClass::TriangleFreePlanar | GraphClass::Outerplanar => {
            if n >= 2 {
                edge_bound(2 * n - 3, "2|V|-3", &mut report);
            }
            if class == GraphClass::TriangleFreePlanar && has_triangle(g) {
                report.push(SanityViolation::HasTriangle);
            }
        }
        GraphClass::Girth5Planar => {
            if let Some(girth) = girth(g) {
                if girth < 5 {
                    report.push(SanityViolation::GirthTooSmall { girth, required: 5 });
                }
            }
        }
    }
    report
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    let mut stack = Vec::new();
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        stack.push(s);
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

pub fn has_triangle(g: &Graph) -> bool {
    g.edges()
        .any(|(u, v)| g.neighbors(u).iter().any(|&w| w != v && g.has_edge(v, w)))
}

/// Length of a shortest cycle, `None` for forests. BFS from every vertex:
/// a non-tree edge `{u, w}` met from source `s` closes a closed walk of
/// length `dist(u) + dist(w) + 1`, and the minimum over all sources is the
/// girth.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        queue.clear();
        queue.push(s);
        dist[s] = 0;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        for &u in &queue {
            dist[u] = usize::MAX;
            parent[u] = usize::MAX;
        }
    }
    (best != usize::MAX).then_some(best)
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || g.ball(0, g.n()).len() == g.n()
}
