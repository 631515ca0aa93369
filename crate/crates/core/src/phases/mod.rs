//! The three selection phases.
//!
//! 1. D1: vertices whose open neighborhood cannot be dominated by three
//!    other vertices.
//! 2. D2: every vertex that shares at least `pair_threshold` red neighbors
//!    with some other vertex (skipped for girth-5 and outerplanar inputs).
//! 3. D3: residual-degree greedy over levels `cap..=0`.
//!
//! [`run_pipeline`] executes everything through the LOCAL engine;
//! [`run_pipeline_direct`] computes the same result centrally.

mod direct;
mod kernel;
mod program;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::class::{ClassParams, GraphClass};
use crate::graph::{Graph, Vertex};
use crate::local::run_rounds;

pub use direct::{neighborhood_dominable_within, phase1_d1, phase2_d2, phase3_greedy, GreedyOutcome, PairSelection};
pub use program::{schedule_rounds, DomsetProgram, NodeReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Color {
    /// Not yet dominated.
    Red,
    /// Dominated, not selected.
    Yellow,
    /// Selected into some phase's set.
    Green,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PhaseTrace {
    pub d1: BTreeSet<Vertex>,
    pub w: BTreeSet<Vertex>,
    /// `B_v` for every `v ∈ W`.
    pub b: BTreeMap<Vertex, BTreeSet<Vertex>>,
    pub d2: BTreeSet<Vertex>,
    /// `Δ_i` for every level `i` in `0..=cap`.
    pub deltas: BTreeMap<usize, BTreeSet<Vertex>>,
    /// `|R_i|` for every level.
    pub r_sizes: BTreeMap<usize, usize>,
    /// Maximum residual degree at the start of every level. The entry for
    /// `cap` is the maximum right after phase two.
    pub max_residual: BTreeMap<usize, usize>,
    pub cleanup: BTreeSet<Vertex>,
    pub rounds_used: usize,
}

impl PhaseTrace {
    /// `D3 = ⋃ Δ_i`, level 0 included.
    pub fn d3(&self) -> BTreeSet<Vertex> {
        self.deltas.values().flatten().copied().collect()
    }

    pub fn d3_len(&self) -> usize {
        self.deltas.values().map(BTreeSet::len).sum()
    }

    /// Color of `v` once phase two is finished.
    pub fn color_after_phase2(&self, g: &Graph, v: Vertex) -> Color {
        let green = |u: &Vertex| self.d1.contains(u) || self.d2.contains(u);
        if green(&v) {
            Color::Green
        } else if g.neighbors(v).iter().any(green) {
            Color::Yellow
        } else {
            Color::Red
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Warning {
    CapExceeded { max_residual: usize, cap: usize },
    ResidualAboveLevel { level: usize, max_residual: usize },
    Cleanup { vertices: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("class invariant violated: ")?;
        match self {
            Warning::CapExceeded { max_residual, cap } => {
                write!(f, "residual degree {max_residual} after phase 2 exceeds cap {cap}")
            }
            Warning::ResidualAboveLevel { level, max_residual } => {
                write!(f, "residual degree {max_residual} at start of level {level}")
            }
            Warning::Cleanup { vertices } => write!(f, "{vertices} vertices left for cleanup"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomSetResult {
    pub dominating_set: BTreeSet<Vertex>,
    pub trace: PhaseTrace,
    pub class: GraphClass,
    pub warnings: Vec<Warning>,
}

impl DomSetResult {
    fn assemble(class: GraphClass, trace: PhaseTrace) -> Self {
        let params = class.params();
        let mut dominating_set: BTreeSet<Vertex> = trace.d1.union(&trace.d2).copied().collect();
        dominating_set.extend(trace.d3());
        dominating_set.extend(&trace.cleanup);
        let warnings = warnings(&params, &trace);
        DomSetResult {
            dominating_set,
            trace,
            class,
            warnings,
        }
    }
}

fn warnings(params: &ClassParams, trace: &PhaseTrace) -> Vec<Warning> {
    let cap = params.residual_cap;
    let mut out = Vec::new();
    for (&level, &max_residual) in trace.max_residual.iter().rev() {
        if max_residual > level {
            out.push(if level == cap {
                Warning::CapExceeded { max_residual, cap }
            } else {
                Warning::ResidualAboveLevel { level, max_residual }
            });
        }
    }
    if !trace.cleanup.is_empty() {
        out.push(Warning::Cleanup {
            vertices: trace.cleanup.len(),
        });
    }
    out
}

/// Runs all three phases through the LOCAL engine.
pub fn run_pipeline(g: &Graph, class: GraphClass) -> DomSetResult {
    let params = class.params();
    let cap = params.residual_cap;
    let program = DomsetProgram { params };
    let limit = schedule_rounds(&params);
    let record = run_rounds(g, &program, limit).expect("schedule halts every node at its last round");
    let reports = &record.outputs;

    let mut trace = PhaseTrace {
        rounds_used: record.rounds_used,
        ..PhaseTrace::default()
    };
    for (v, r) in reports.iter().enumerate() {
        if r.in_d1 {
            trace.d1.insert(v);
        }
        if !r.b.is_empty() {
            trace.w.insert(v);
            trace.b.insert(v, r.b.clone());
        }
        if r.in_d2 {
            trace.d2.insert(v);
        }
        if r.cleanup {
            trace.cleanup.insert(v);
        }
    }
    for level in (0..=cap).rev() {
        let delta = reports
            .iter()
            .enumerate()
            .filter(|(_, r)| r.selected_at == Some(level))
            .map(|(v, _)| v)
            .collect();
        trace.deltas.insert(level, delta);
        // Red at the start of `level`: red after phase two and not yet
        // dominated at a higher level.
        let red = reports
            .iter()
            .filter(|r| r.red_after_phase2 && r.dominated_at.is_none_or(|d| d <= level))
            .count();
        trace.r_sizes.insert(level, red);
        let max = reports.iter().map(|r| r.residual_by_level[level]).max().unwrap_or(0);
        trace.max_residual.insert(level, max);
    }
    DomSetResult::assemble(class, trace)
}

/// Same result as [`run_pipeline`], computed centrally. `rounds_used` is the
/// length of the schedule the engine would run.
pub fn run_pipeline_direct(g: &Graph, class: GraphClass) -> DomSetResult {
    let params = class.params();
    let d1 = phase1_d1(g);
    let red = direct::red_after(g, &d1);
    let pairs = match params.pair_threshold {
        Some(threshold) => phase2_d2(g, &red, threshold),
        None => PairSelection::default(),
    };
    let green: BTreeSet<Vertex> = d1.union(&pairs.d2).copied().collect();
    let red = direct::red_after(g, &green);
    let greedy = phase3_greedy(g, &red, params.residual_cap);
    let trace = PhaseTrace {
        d1,
        w: pairs.w,
        b: pairs.b,
        d2: pairs.d2,
        deltas: greedy.deltas,
        r_sizes: greedy.r_sizes,
        max_residual: greedy.max_residual,
        cleanup: greedy.cleanup,
        rounds_used: if g.n() == 0 { 0 } else { schedule_rounds(&params) },
    };
    DomSetResult::assemble(class, trace)
}
