//! The three phases as a single LOCAL node program.
//!
//! Round schedule (all nodes in lockstep, so the total depends only on the
//! class parameters):
//!
//! | rounds            | content                                             |
//! |-------------------|-----------------------------------------------------|
//! | 1                 | exchange ids                                        |
//! | 2                 | exchange neighbor lists, decide D1                  |
//! | 3                 | D1 members announce; receivers learn their color    |
//! | 4 (phase two)     | red vertices announce; decide `B_v` and D2          |
//! | 5 (phase two)     | D2 members announce; receivers recolor              |
//! | 4 per level `i ≥ 1` | red announce, residual announce, elect, selected announce |
//! | 1 for level 0     | red announce; isolated red vertices pick themselves, the rest go to cleanup |
//!
//! A level needs four rounds: whether a vertex is elected at level `i - 1`
//! depends on elections at distance four made at level `i`.

use std::collections::BTreeSet;
use std::rc::Rc;

use crate::class::ClassParams;
use crate::graph::Vertex;
use crate::local::{NodeProgram, Outbox};

use super::kernel::dominable_within;

/// Total rounds of the schedule on a graph with at least one vertex.
pub fn schedule_rounds(params: &ClassParams) -> usize {
    prefix_rounds(params) + 4 * params.residual_cap + 1
}

fn prefix_rounds(params: &ClassParams) -> usize {
    if params.pair_threshold.is_some() {
        5
    } else {
        3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Ids,
    NeighborLists,
    AnnounceD1,
    AnnounceRed,
    AnnounceD2,
    Level { level: usize, step: LevelStep },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LevelStep {
    Red,
    Residual,
    Elect,
    Selected,
}

fn slot(round: usize, params: &ClassParams) -> Slot {
    let prefix = prefix_rounds(params);
    match round {
        1 => Slot::Ids,
        2 => Slot::NeighborLists,
        3 => Slot::AnnounceD1,
        4 if prefix == 5 => Slot::AnnounceRed,
        5 if prefix == 5 => Slot::AnnounceD2,
        _ => {
            let offset = round - prefix - 1;
            let level = params.residual_cap - offset / 4;
            let step = match offset % 4 {
                0 => LevelStep::Red,
                1 => LevelStep::Residual,
                2 => LevelStep::Elect,
                _ => LevelStep::Selected,
            };
            Slot::Level { level, step }
        }
    }
}

#[derive(Debug, Clone)]
pub enum Msg {
    Hello,
    Neighbors(Rc<Vec<Vertex>>),
    /// Membership announcement; only sent when true.
    Flag,
    Residual(usize),
    Elect,
}

#[derive(Debug, Clone, Default)]
pub struct NodeState {
    id: Vertex,
    neighbors: Vec<Vertex>,
    second_hop: Vec<Rc<Vec<Vertex>>>,
    report: NodeReport,
    red: bool,
    residual: usize,
    choice: Option<Vertex>,
}

/// Everything one node knows about its own role at the end of the run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeReport {
    pub in_d1: bool,
    pub b: BTreeSet<Vertex>,
    pub in_d2: bool,
    pub red_after_phase2: bool,
    /// Level at which the node was elected into `Δ_i`.
    pub selected_at: Option<usize>,
    /// Level during which the node stopped being red.
    pub dominated_at: Option<usize>,
    pub cleanup: bool,
    /// Residual degree at the start of each level, indexed by level.
    pub residual_by_level: Vec<usize>,
}

pub struct DomsetProgram {
    pub params: ClassParams,
}

impl NodeProgram for DomsetProgram {
    type State = NodeState;
    type Message = Msg;
    type Output = NodeReport;

    fn init(&self, id: Vertex, degree: usize) -> NodeState {
        NodeState {
            id,
            neighbors: Vec::with_capacity(degree),
            report: NodeReport {
                residual_by_level: vec![0; self.params.residual_cap + 1],
                ..NodeReport::default()
            },
            ..NodeState::default()
        }
    }

    fn send(&self, s: &NodeState, round: usize) -> Outbox<Msg> {
        let flag = |on: bool| {
            if on {
                Outbox::Broadcast(Msg::Flag)
            } else {
                Outbox::Silent
            }
        };
        match slot(round, &self.params) {
            Slot::Ids => Outbox::Broadcast(Msg::Hello),
            Slot::NeighborLists => Outbox::Broadcast(Msg::Neighbors(Rc::new(s.neighbors.clone()))),
            Slot::AnnounceD1 => flag(s.report.in_d1),
            Slot::AnnounceRed => flag(s.red),
            Slot::AnnounceD2 => flag(s.report.in_d2),
            Slot::Level { level, step } => match step {
                LevelStep::Red => flag(s.red),
                LevelStep::Residual => Outbox::Broadcast(Msg::Residual(s.residual)),
                LevelStep::Elect => match s.choice {
                    Some(u) if u != s.id => Outbox::To(vec![(u, Msg::Elect)]),
                    _ => Outbox::Silent,
                },
                LevelStep::Selected => flag(s.report.selected_at == Some(level)),
            },
        }
    }

    fn receive(&self, s: &mut NodeState, round: usize, inbox: Vec<(Vertex, Msg)>) -> bool {
        match slot(round, &self.params) {
            Slot::Ids => {
                s.neighbors = inbox.into_iter().map(|(u, _)| u).collect();
            }
            Slot::NeighborLists => {
                s.second_hop = inbox
                    .into_iter()
                    .map(|(_, msg)| match msg {
                        Msg::Neighbors(list) => list,
                        other => unreachable!("unexpected {other:?} in neighbor-list round"),
                    })
                    .collect();
                let hops: Vec<&[Vertex]> = s.second_hop.iter().map(|l| l.as_slice()).collect();
                s.report.in_d1 = !dominable_within(s.id, &s.neighbors, &hops, 3);
            }
            Slot::AnnounceD1 => {
                s.red = !s.report.in_d1 && inbox.is_empty();
                if self.params.pair_threshold.is_none() {
                    s.report.red_after_phase2 = s.red;
                }
            }
            Slot::AnnounceRed => {
                let threshold = self.params.pair_threshold.expect("phase two enabled");
                let red_neighbors: BTreeSet<Vertex> = inbox.into_iter().map(|(u, _)| u).collect();
                let mut shared: std::collections::BTreeMap<Vertex, usize> = Default::default();
                for (w, hop) in s.neighbors.iter().zip(&s.second_hop) {
                    if red_neighbors.contains(w) {
                        for &z in hop.iter().filter(|&&z| z != s.id) {
                            *shared.entry(z).or_default() += 1;
                        }
                    }
                }
                s.report.b = shared
                    .into_iter()
                    .filter(|&(_, count)| count >= threshold)
                    .map(|(z, _)| z)
                    .collect();
                // z ∈ B_v iff v ∈ B_z, so v ∈ D2 exactly when B_v ≠ ∅.
                s.report.in_d2 = !s.report.b.is_empty();
            }
            Slot::AnnounceD2 => {
                if s.report.in_d2 || !inbox.is_empty() {
                    s.red = false;
                }
                s.report.red_after_phase2 = s.red;
            }
            Slot::Level { level, step } => match step {
                LevelStep::Red => {
                    s.residual = inbox.len();
                    s.report.residual_by_level[level] = s.residual;
                    if level == 0 {
                        if s.red {
                            if s.residual == 0 {
                                s.report.selected_at = Some(0);
                                s.report.dominated_at = Some(0);
                            } else {
                                s.report.cleanup = true;
                            }
                            s.red = false;
                        }
                        return true;
                    }
                }
                LevelStep::Residual => {
                    s.choice = None;
                    if s.red {
                        let own = (s.residual == level).then_some(s.id);
                        s.choice = inbox
                            .into_iter()
                            .filter_map(|(u, msg)| match msg {
                                Msg::Residual(r) if r == level => Some(u),
                                _ => None,
                            })
                            .chain(own)
                            .min();
                    }
                }
                LevelStep::Elect => {
                    if s.choice == Some(s.id) || !inbox.is_empty() {
                        s.report.selected_at = Some(level);
                    }
                }
                LevelStep::Selected => {
                    if s.red && (s.report.selected_at == Some(level) || !inbox.is_empty()) {
                        s.red = false;
                        s.report.dominated_at = Some(level);
                    }
                }
            },
        }
        false
    }

    fn output(&self, s: &NodeState) -> NodeReport {
        s.report.clone()
    }
}
