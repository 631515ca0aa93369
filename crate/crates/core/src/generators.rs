//! Instance generators. Each generator's output belongs to its advertised
//! class by construction; `check_class_sanity` only screens necessary
//! conditions.
//!
//! The seeded `random_*` generators start from a random Apollonian network
//! (a maximal planar graph) and keep a subgraph. Subgraphs of planar graphs
//! are planar. An edge joining two components can never close a cycle, so
//! greedy filtering over all edges of a connected host keeps the result
//! connected.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::class::GraphClass;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    Grid {
        rows: usize,
        cols: usize,
    },
    /// Grid with the down-right diagonal added in every cell.
    TriangulatedGrid {
        rows: usize,
        cols: usize,
    },
    RandomApollonian {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    /// `K_{2,n}`.
    CompleteBipartite2n {
        n: usize,
    },
    /// Vertex 0 joined to every vertex of the path `1 - 2 - ... - (n-1)`.
    MaximalOuterplanarFan {
        n: usize,
    },
    Dodecahedron,
    /// Grid with every edge subdivided once (girth 8).
    SubdividedGrid {
        rows: usize,
        cols: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    RandomOuterplanar {
        n: usize,
    },
    RandomTrifreePlanar {
        n: usize,
    },
    RandomBipartitePlanar {
        n: usize,
    },
    RandomGirth5Planar {
        n: usize,
    },
}

/// Loose parameter bag, as supplied on the command line or in configs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub n: Option<usize>,
    pub leaves: Option<usize>,
}

pub const KINDS: [&str; 14] = [
    "grid",
    "triangulated_grid",
    "random_apollonian",
    "star",
    "complete_bipartite_2n",
    "maximal_outerplanar_fan",
    "dodecahedron",
    "subdivided_grid",
    "path",
    "cycle",
    "random_outerplanar",
    "random_trifree_planar",
    "random_bipartite_planar",
    "random_girth5_planar",
];

impl Generator {
    pub fn from_kind(kind: &str, params: GenParams) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidParams(format!("generator {kind} needs --{what}")))
        };
        let dims = || -> Result<(usize, usize)> { Ok((need(params.rows, "rows")?, need(params.cols, "cols")?)) };
        let count = || need(params.n, "n");
        let g = match kind {
            "grid" => {
                let (rows, cols) = dims()?;
                Generator::Grid { rows, cols }
            }
            "triangulated_grid" => {
                let (rows, cols) = dims()?;
                Generator::TriangulatedGrid { rows, cols }
            }
            "subdivided_grid" => {
                let (rows, cols) = dims()?;
                Generator::SubdividedGrid { rows, cols }
            }
            "random_apollonian" => Generator::RandomApollonian { n: count()? },
            "star" => Generator::Star {
                leaves: need(params.leaves.or(params.n), "leaves")?,
            },
            "complete_bipartite_2n" => Generator::CompleteBipartite2n { n: count()? },
            "maximal_outerplanar_fan" => Generator::MaximalOuterplanarFan { n: count()? },
            "dodecahedron" => Generator::Dodecahedron,
            "path" => Generator::Path { n: count()? },
            "cycle" => Generator::Cycle { n: count()? },
            "random_outerplanar" => Generator::RandomOuterplanar { n: count()? },
            "random_trifree_planar" => Generator::RandomTrifreePlanar { n: count()? },
            "random_bipartite_planar" => Generator::RandomBipartitePlanar { n: count()? },
            "random_girth5_planar" => Generator::RandomGirth5Planar { n: count()? },
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown generator {other:?} (known: {})",
                    KINDS.join(", ")
                )))
            }
        };
        Ok(g)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Generator::Grid { .. } => "grid",
            Generator::TriangulatedGrid { .. } => "triangulated_grid",
            Generator::RandomApollonian { .. } => "random_apollonian",
            Generator::Star { .. } => "star",
            Generator::CompleteBipartite2n { .. } => "complete_bipartite_2n",
            Generator::MaximalOuterplanarFan { .. } => "maximal_outerplanar_fan",
            Generator::Dodecahedron => "dodecahedron",
            Generator::SubdividedGrid { .. } => "subdivided_grid",
            Generator::Path { .. } => "path",
            Generator::Cycle { .. } => "cycle",
            Generator::RandomOuterplanar { .. } => "random_outerplanar",
            Generator::RandomTrifreePlanar { .. } => "random_trifree_planar",
            Generator::RandomBipartitePlanar { .. } => "random_bipartite_planar",
            Generator::RandomGirth5Planar { .. } => "random_girth5_planar",
        }
    }

    /// The most restrictive class the output is guaranteed to belong to.
    pub fn advertised_class(&self) -> GraphClass {
        match self {
            Generator::Grid { .. }
            | Generator::CompleteBipartite2n { .. }
            | Generator::RandomBipartitePlanar { .. } => GraphClass::BipartitePlanar,
            Generator::TriangulatedGrid { .. } | Generator::RandomApollonian { .. } => GraphClass::Planar,
            Generator::Dodecahedron | Generator::SubdividedGrid { .. } | Generator::RandomGirth5Planar { .. } => {
                GraphClass::Girth5Planar
            }
            Generator::MaximalOuterplanarFan { .. } | Generator::RandomOuterplanar { .. } => GraphClass::Outerplanar,
            Generator::RandomTrifreePlanar { .. } => GraphClass::TriangleFreePlanar,
            // Trees are in every class.
            Generator::Star { .. } | Generator::Path { .. } => GraphClass::Girth5Planar,
            Generator::Cycle { n } => match n {
                3 => GraphClass::Outerplanar,
                4 => GraphClass::BipartitePlanar,
                _ => GraphClass::Girth5Planar,
            },
        }
    }

    /// Whether the output is guaranteed to lie in `class`.
    pub fn belongs_to(&self, class: GraphClass) -> bool {
        use GraphClass::*;
        if class == Planar {
            return true;
        }
        match self {
            Generator::Star { .. } | Generator::Path { .. } => true,
            Generator::Cycle { n } => match class {
                Outerplanar => true,
                BipartitePlanar => n % 2 == 0,
                TriangleFreePlanar => *n >= 4,
                Girth5Planar => *n >= 5,
                Planar => true,
            },
            Generator::CompleteBipartite2n { n } if class == Outerplanar => *n <= 2,
            _ => {
                let adv = self.advertised_class();
                adv == class
                    || (class == TriangleFreePlanar && matches!(adv, BipartitePlanar | Girth5Planar))
                    || (class == BipartitePlanar && matches!(self, Generator::SubdividedGrid { .. }))
            }
        }
    }
}

/// Deterministic in `(generator, seed)`. Only the `random_*` generators use
/// the seed.
pub fn generate_graph(generator: &Generator, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let positive = |v: usize, what: &str| {
        if v == 0 {
            Err(Error::InvalidParams(format!("{what} must be positive")))
        } else {
            Ok(v)
        }
    };
    let at_least = |v: usize, min: usize, what: &str| {
        if v < min {
            Err(Error::InvalidParams(format!("{what} must be at least {min}, got {v}")))
        } else {
            Ok(v)
        }
    };
    match *generator {
        Generator::Grid { rows, cols } => Ok(grid(positive(rows, "rows")?, positive(cols, "cols")?, false)),
        Generator::TriangulatedGrid { rows, cols } => Ok(grid(positive(rows, "rows")?, positive(cols, "cols")?, true)),
        Generator::SubdividedGrid { rows, cols } => Ok(subdivide(&grid(
            positive(rows, "rows")?,
            positive(cols, "cols")?,
            false,
        ))),
        Generator::RandomApollonian { n } => Ok(random_apollonian(at_least(n, 3, "n")?, &mut rng)),
        Generator::Star { leaves } => {
            let leaves = positive(leaves, "leaves")?;
            Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
        }
        Generator::CompleteBipartite2n { n } => {
            let n = positive(n, "n")?;
            Graph::from_edges(n + 2, (2..n + 2).flat_map(|v| [(0, v), (1, v)]))
        }
        Generator::MaximalOuterplanarFan { n } => {
            let n = at_least(n, 3, "n")?;
            Graph::from_edges(n, (1..n).map(|v| (0, v)).chain((2..n).map(|v| (v - 1, v))))
        }
        Generator::Dodecahedron => Ok(dodecahedron()),
        Generator::Path { n } => {
            let n = positive(n, "n")?;
            Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
        }
        Generator::Cycle { n } => {
            let n = at_least(n, 3, "n")?;
            Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        Generator::RandomOuterplanar { n } => Ok(random_outerplanar(at_least(n, 3, "n")?, &mut rng)),
        Generator::RandomTrifreePlanar { n } => {
            let host = random_apollonian(at_least(n, 3, "n")?, &mut rng);
            Ok(filter_edges(&host, &mut rng, |g, u, v| !has_common_neighbor(g, u, v)))
        }
        Generator::RandomGirth5Planar { n } => {
            let host = random_apollonian(at_least(n, 3, "n")?, &mut rng);
            // Adding {u, v} closes a cycle of length dist(u, v) + 1.
            Ok(filter_edges(&host, &mut rng, |g, u, v| {
                !g.ball(u, 3).iter().any(|&(w, _)| w == v)
            }))
        }
        Generator::RandomBipartitePlanar { n } => {
            let host = random_apollonian(at_least(n, 3, "n")?, &mut rng);
            Ok(bipartite_filter(&host, &mut rng))
        }
    }
}

fn grid(rows: usize, cols: usize, diagonals: bool) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if diagonals && r + 1 < rows && c + 1 < cols {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("grid edges are simple")
}

fn subdivide(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for (k, (u, v)) in g.edges().enumerate() {
        edges.push((u, n + k));
        edges.push((n + k, v));
    }
    Graph::from_edges(n + g.edge_count(), edges).expect("subdivision is simple")
}

fn dodecahedron() -> Graph {
    // Outer 5-cycle 0..5, middle 10-cycle 5..15, inner 5-cycle 15..20.
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    Graph::from_edges(20, edges).expect("dodecahedron edges are simple")
}

/// Start from a triangle; repeatedly pick a uniformly random inner face and
/// insert a vertex joined to its three corners. Yields `3n - 6` edges.
fn random_apollonian(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    // Both sides of the initial triangle are faces; splitting either is fine.
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let k = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[k];
        for x in [a, b, c] {
            g.add_edge(v, x);
        }
        faces[k] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([a, c, v]);
    }
    g
}

/// Random maximal outerplanar graph: start from a triangle and repeatedly
/// attach a new vertex to both ends of a random edge of the outer cycle.
fn random_outerplanar(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    let mut boundary: Vec<Vertex> = vec![0, 1, 2];
    for v in 3..n {
        let k = rng.gen_range(0..boundary.len());
        let a = boundary[k];
        let b = boundary[(k + 1) % boundary.len()];
        g.add_edge(v, a);
        g.add_edge(v, b);
        boundary.insert(k + 1, v);
    }
    g
}

fn has_common_neighbor(g: &Graph, u: Vertex, v: Vertex) -> bool {
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Visits the host's edges in random order and keeps each one that `keep`
/// accepts against the graph built so far.
fn filter_edges<F>(host: &Graph, rng: &mut ChaCha8Rng, keep: F) -> Graph
where
    F: Fn(&Graph, Vertex, Vertex) -> bool,
{
    let mut edges: Vec<_> = host.edges().collect();
    edges.shuffle(rng);
    let mut g = Graph::empty(host.n());
    for (u, v) in edges {
        if keep(&g, u, v) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Greedy filtering that keeps the graph bipartite, tracked with a
/// parity-aware union-find.
fn bipartite_filter(host: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    fn find(parent: &mut [usize], parity: &mut [bool], x: usize) -> (usize, bool) {
        if parent[x] == x {
            return (x, false);
        }
        let (root, p) = find(parent, parity, parent[x]);
        parent[x] = root;
        parity[x] ^= p;
        (root, parity[x])
    }

    let n = host.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![false; n];
    let mut edges: Vec<_> = host.edges().collect();
    edges.shuffle(rng);
    let mut g = Graph::empty(n);
    for (u, v) in edges {
        let (ru, pu) = find(&mut parent, &mut parity, u);
        let (rv, pv) = find(&mut parent, &mut parity, v);
        if ru != rv {
            parent[ru] = rv;
            parity[ru] = pu ^ pv ^ true;
            g.add_edge(u, v);
        } else if pu != pv {
            g.add_edge(u, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sanity::{check_class_sanity, is_connected};

    #[test]
    fn grid_counts() {
        let g = generate_graph(&Generator::Grid { rows: 3, cols: 3 }, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (9, 12));
        let g = generate_graph(&Generator::Grid { rows: 4, cols: 7 }, 0).unwrap();
        assert_eq!(g.edge_count(), 2 * 4 * 7 - 4 - 7);
    }

    #[test]
    fn star_is_k1n() {
        let g = generate_graph(&Generator::Star { leaves: 5 }, 0).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.degree(0)), (6, 5, 5));
    }

    #[test]
    fn apollonian_is_maximal_planar() {
        let g = generate_graph(&Generator::RandomApollonian { n: 50 }, 7).unwrap();
        assert_eq!(g.n(), 50);
        assert_eq!(g.edge_count(), 144);
    }

    #[test]
    fn fixed_shapes() {
        let g = generate_graph(&Generator::Dodecahedron, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (20, 30));
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        let g = generate_graph(&Generator::MaximalOuterplanarFan { n: 8 }, 0).unwrap();
        assert_eq!(g.edge_count(), 2 * 8 - 3);
        let g = generate_graph(&Generator::RandomOuterplanar { n: 40 }, 3).unwrap();
        assert_eq!(g.edge_count(), 2 * 40 - 3);
        let g = generate_graph(&Generator::SubdividedGrid { rows: 2, cols: 3 }, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6 + 7, 14));
        let g = generate_graph(&Generator::CompleteBipartite2n { n: 10 }, 0).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 20));
        let g = generate_graph(&Generator::TriangulatedGrid { rows: 3, cols: 3 }, 0).unwrap();
        assert_eq!(g.edge_count(), 12 + 4);
    }

    #[test]
    fn invalid_params_are_rejected() {
        for gen in [
            Generator::Grid { rows: 0, cols: 3 },
            Generator::Path { n: 0 },
            Generator::Cycle { n: 2 },
            Generator::RandomApollonian { n: 2 },
            Generator::Star { leaves: 0 },
        ] {
            assert!(
                matches!(generate_graph(&gen, 0), Err(Error::InvalidParams(_))),
                "{gen:?}"
            );
        }
        assert!(Generator::from_kind(
            "grid",
            GenParams {
                rows: Some(2),
                ..Default::default()
            }
        )
        .is_err());
        assert!(Generator::from_kind("moebius", GenParams::default()).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in KINDS {
            let params = GenParams {
                rows: Some(4),
                cols: Some(5),
                n: Some(30),
                leaves: Some(6),
            };
            let gen = Generator::from_kind(kind, params).unwrap();
            assert_eq!(gen.kind(), kind);
            assert_eq!(generate_graph(&gen, 11).unwrap(), generate_graph(&gen, 11).unwrap());
        }
        let a = generate_graph(&Generator::RandomApollonian { n: 30 }, 1).unwrap();
        let b = generate_graph(&Generator::RandomApollonian { n: 30 }, 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn random_generators_pass_sanity_over_many_seeds() {
        let gens = [
            Generator::RandomApollonian { n: 40 },
            Generator::RandomOuterplanar { n: 40 },
            Generator::RandomTrifreePlanar { n: 40 },
            Generator::RandomBipartitePlanar { n: 40 },
            Generator::RandomGirth5Planar { n: 40 },
        ];
        for gen in gens {
            for seed in 0..100 {
                let g = generate_graph(&gen, seed).unwrap();
                assert!(is_connected(&g), "{gen:?} seed {seed} disconnected");
                for class in GraphClass::ALL {
                    if gen.belongs_to(class) {
                        let report = check_class_sanity(&g, class);
                        assert!(report.is_empty(), "{gen:?} seed {seed} as {class}: {report:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_generators_pass_sanity() {
        let gens = [
            Generator::Grid { rows: 5, cols: 6 },
            Generator::TriangulatedGrid { rows: 5, cols: 6 },
            Generator::Star { leaves: 7 },
            Generator::CompleteBipartite2n { n: 9 },
            Generator::MaximalOuterplanarFan { n: 12 },
            Generator::Dodecahedron,
            Generator::SubdividedGrid { rows: 3, cols: 4 },
            Generator::Path { n: 9 },
            Generator::Cycle { n: 3 },
            Generator::Cycle { n: 4 },
            Generator::Cycle { n: 7 },
        ];
        for gen in gens {
            let g = generate_graph(&gen, 0).unwrap();
            for class in GraphClass::ALL {
                if gen.belongs_to(class) {
                    assert!(check_class_sanity(&g, class).is_empty(), "{gen:?} as {class}");
                }
            }
        }
    }
}
