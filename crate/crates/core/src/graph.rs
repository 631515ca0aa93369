//! Undirected simple graphs and their text formats.
//!
//! Edge-list format: optional `#` comment lines, a header `n m`, then exactly
//! `m` lines `u v`. Each undirected edge appears once. The serializer writes
//! `u < v` with edges sorted lexicographically.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// Vertex ids double as the unique LOCAL identifiers; all tie-breaking uses
/// the minimum id.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// The graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v || g.adjacency[u].contains(&v) {
                return Err(Error::InvalidParams(format!(
                    "edge {{{u}, {v}}} is a self-loop or duplicate"
                )));
            }
            g.adjacency[u].push(v);
            g.adjacency[v].push(u);
        }
        g.sort_lists();
        Ok(g)
    }

    fn sort_lists(&mut self) {
        for list in &mut self.adjacency {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted open neighborhood.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Adds an edge if it is absent. Returns whether the graph changed.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u < self.n() && v < self.n() && u != v);
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                true
            }
        }
    }

    /// Removes an edge if present. Returns whether the graph changed.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.adjacency[u].binary_search(&v) {
            Ok(pos) => {
                self.adjacency[u].remove(pos);
                let pos = self.adjacency[v].binary_search(&u).unwrap();
                self.adjacency[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|list| list.iter().map(|&v| v + offset).collect()),
        );
        Graph { adjacency }
    }

    /// Vertices at distance at most `radius` from `v`, with their distances.
    pub fn ball(&self, v: Vertex, radius: usize) -> Vec<(Vertex, usize)> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[v] = 0;
        let mut order = vec![v];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            if dist[u] == radius {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    order.push(w);
                }
            }
        }
        order.into_iter().map(|u| (u, dist[u])).collect()
    }

    /// Serializes to the edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let malformed = || ParseError::new(line_no, ParseErrorKind::Malformed(line.to_string()));
    let mut fields = line.split_whitespace();
    let a = fields.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
    let b = fields.next().and_then(|s| s.parse().ok()).ok_or_else(malformed)?;
    if fields.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

/// Parses the edge-list format. Edge order in the file does not matter.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = data_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, ParseErrorKind::MissingHeader))?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut seen = BTreeSet::new();
    let mut g = Graph::empty(n);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        let (u, v) = parse_pair(line_no, line)?;
        for x in [u, v] {
            if x >= n {
                return Err(ParseError::new(line_no, ParseErrorKind::OutOfRange { vertex: x, n }));
            }
        }
        if u == v {
            return Err(ParseError::new(line_no, ParseErrorKind::SelfLoop(u)));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::new(line_no, ParseErrorKind::DuplicateEdge(key.0, key.1)));
        }
        g.adjacency[u].push(v);
        g.adjacency[v].push(u);
    }
    if seen.len() != m {
        return Err(ParseError::new(
            last_line,
            ParseErrorKind::EdgeCount {
                declared: m,
                found: seen.len(),
            },
        ));
    }
    g.sort_lists();
    Ok(g)
}

/// Parses a vertex-set file: one id per line, `#` comments allowed.
/// Duplicates collapse.
pub fn parse_vertex_set(text: &str) -> Result<BTreeSet<Vertex>, ParseError> {
    data_lines(text)
        .map(|(line_no, line)| {
            line.parse::<Vertex>()
                .map_err(|_| ParseError::new(line_no, ParseErrorKind::Malformed(line.to_string())))
        })
        .collect()
}

pub fn format_vertex_set<'a>(set: impl IntoIterator<Item = &'a Vertex>) -> String {
    let mut out = String::new();
    for v in set {
        let _ = writeln!(out, "{v}");
    }
    out
}

/// True iff every vertex is in `set` or adjacent to a member of it.
pub fn verify_dominating_set<'a, I>(g: &Graph, set: I) -> Result<bool>
where
    I: IntoIterator<Item = &'a Vertex>,
{
    let mut dominated = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    Ok(dominated.into_iter().all(|d| d))
}

/// Vertices not dominated by `set`; ids must be in range.
pub fn undominated<'a, I>(g: &Graph, set: I) -> Vec<Vertex>
where
    I: IntoIterator<Item = &'a Vertex>,
{
    let mut dominated = vec![false; g.n()];
    for &v in set {
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    g.vertices().filter(|&v| !dominated[v]).collect()
}
