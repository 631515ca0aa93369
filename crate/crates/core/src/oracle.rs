//! Exact minimum dominating set.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest graph [`gamma_bruteforce`] accepts.
pub const BRUTEFORCE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub gamma: usize,
    pub witness: BTreeSet<Vertex>,
    pub nodes_explored: u64,
    /// False when the search budget ran out; `gamma` is then only an upper
    /// bound.
    pub exhausted: bool,
}

/// Enumerates subsets in increasing size.
pub fn gamma_bruteforce(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let closed: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | 1 << u))
        .collect();
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut nodes = 0u64;
    for k in 0..=n {
        for subset in Combinations::new(n, k) {
            nodes += 1;
            let covered = (0..n)
                .filter(|&v| subset >> v & 1 == 1)
                .fold(0u32, |m, v| m | closed[v]);
            if covered == full {
                return Ok(OracleResult {
                    gamma: k,
                    witness: (0..n).filter(|&v| subset >> v & 1 == 1).collect(),
                    nodes_explored: nodes,
                    exhausted: true,
                });
            }
        }
    }
    unreachable!("the full vertex set dominates")
}

/// `k`-subsets of `0..n` as bitmasks, in increasing numeric order.
struct Combinations {
    next: Option<u32>,
    limit: u64,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let first = if k == 0 { 0 } else { u32::MAX >> (32 - k) };
        Combinations {
            next: (k <= n).then_some(first),
            limit: 1u64 << n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur as u64;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let succ = (((ripple ^ c) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ as u32)
        };
        Some(cur)
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn count_missing(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (b & !a).count_ones() as usize)
            .sum()
    }
}

struct Search<'a> {
    g: &'a Graph,
    closed: Vec<Bits>,
    budget: u64,
    nodes: u64,
    aborted: bool,
    best: Vec<Vertex>,
    chosen: Vec<Vertex>,
    excluded: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, covered: &Bits, uncovered: usize) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let slack = self.best.len() - self.chosen.len();
        if slack <= 1 {
            // Even one more vertex would not beat the incumbent.
            return;
        }

        let gains: Vec<usize> = self
            .g
            .vertices()
            .map(|c| {
                if self.excluded[c] {
                    0
                } else {
                    covered.count_missing(&self.closed[c])
                }
            })
            .collect();
        if lower_bound(&gains, uncovered) >= slack {
            return;
        }

        // Fail-first: the uncovered vertex with the fewest usable dominators.
        let mut pick: Option<(usize, Vertex)> = None;
        for u in self.g.vertices().filter(|&u| !covered.get(u)) {
            let options = self.candidates(u).filter(|&c| gains[c] > 0).count();
            if pick.is_none_or(|(best, _)| options < best) {
                pick = Some((options, u));
            }
        }
        let (options, u) = pick.expect("uncovered vertex exists");
        if options == 0 {
            return;
        }
        let mut branch: Vec<Vertex> = self.candidates(u).filter(|&c| gains[c] > 0).collect();
        branch.sort_by_key(|&c| (std::cmp::Reverse(gains[c]), c));

        for &c in &branch {
            let mut next = covered.clone();
            next.union_with(&self.closed[c]);
            self.chosen.push(c);
            self.run(&next, uncovered - gains[c]);
            self.chosen.pop();
            // Later siblings may assume `c` is not in the solution.
            self.excluded[c] = true;
        }
        for &c in &branch {
            self.excluded[c] = false;
        }
    }

    fn candidates(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(u)
            .chain(self.g.neighbors(u).iter().copied())
            .filter(|&c| !self.excluded[c])
    }
}

/// Fewest vertices whose largest coverage gains could add up to `uncovered`.
fn lower_bound(gains: &[usize], uncovered: usize) -> usize {
    let mut sorted = gains.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut total = 0;
    for (k, gain) in sorted.into_iter().enumerate() {
        if total >= uncovered {
            return k;
        }
        if gain == 0 {
            break;
        }
        total += gain;
    }
    if total >= uncovered {
        gains.len()
    } else {
        usize::MAX
    }
}

fn greedy(g: &Graph, closed: &[Bits]) -> Vec<Vertex> {
    let mut covered = Bits::new(g.n());
    let mut uncovered = g.n();
    let mut set = Vec::new();
    while uncovered > 0 {
        let (gain, c) = g
            .vertices()
            .map(|c| (covered.count_missing(&closed[c]), std::cmp::Reverse(c)))
            .max()
            .expect("nonempty graph");
        covered.union_with(&closed[c.0]);
        uncovered -= gain;
        set.push(c.0);
    }
    set
}

/// Branch-and-bound over dominators of the most constrained uncovered vertex.
/// Stops after `node_budget` search nodes and returns the best set found.
pub fn gamma_branch_bound(g: &Graph, node_budget: u64) -> OracleResult {
    let n = g.n();
    let closed: Vec<Bits> = g
        .vertices()
        .map(|v| {
            let mut b = Bits::new(n);
            b.set(v);
            for &u in g.neighbors(v) {
                b.set(u);
            }
            b
        })
        .collect();
    let best = greedy(g, &closed);
    let mut search = Search {
        g,
        best,
        closed,
        budget: node_budget.max(1),
        nodes: 0,
        aborted: false,
        chosen: Vec::new(),
        excluded: vec![false; n],
    };
    search.run(&Bits::new(n), n);
    OracleResult {
        gamma: search.best.len(),
        witness: search.best.iter().copied().collect(),
        nodes_explored: search.nodes,
        exhausted: !search.aborted,
    }
}
