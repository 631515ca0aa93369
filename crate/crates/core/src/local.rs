//! Synchronous-round LOCAL-model engine.
//!
//! Every node starts knowing only its own id and degree. A round has two
//! halves: every active node emits its outbox, then the engine delivers all
//! messages at once and every active node processes its inbox. A message sent
//! along `{u, v}` in round `r` is in `v`'s inbox in that same round's receive
//! half and nowhere else. Nodes never see the graph: they see their own state
//! and the `(sender, message)` pairs the engine hands them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Graph, Vertex};

/// What a node puts on its edges in one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outbox<M> {
    Silent,
    /// The same message on every incident edge.
    Broadcast(M),
    /// Individual messages; recipients that are not neighbors are dropped.
    To(Vec<(Vertex, M)>),
}

/// A node program. Messages may be arbitrarily large.
pub trait NodeProgram {
    type State;
    type Message: Clone;
    type Output;

    fn init(&self, id: Vertex, degree: usize) -> Self::State;

    /// The send half of round `round` (1-based).
    fn send(&self, state: &Self::State, round: usize) -> Outbox<Self::Message>;

    /// The receive half of round `round`. The inbox is sorted by sender id.
    /// Returns `true` once the node halts; halted nodes neither send nor
    /// receive again.
    fn receive(&self, state: &mut Self::State, round: usize, inbox: Vec<(Vertex, Self::Message)>) -> bool;

    fn output(&self, state: &Self::State) -> Self::Output;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunRecord<O> {
    pub outputs: Vec<O>,
    pub rounds_used: usize,
}

/// The round limit was hit with nodes still running. Carries the outputs at
/// that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundLimitExceeded<O> {
    pub partial: RunRecord<O>,
    pub still_running: Vec<Vertex>,
}

impl<O> fmt::Display for RoundLimitExceeded<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "round limit {} reached with {} node(s) still running",
            self.partial.rounds_used,
            self.still_running.len()
        )
    }
}

impl<O: fmt::Debug> std::error::Error for RoundLimitExceeded<O> {}

/// Runs `program` on every vertex of `g` until all nodes halt.
pub fn run_rounds<P: NodeProgram>(
    g: &Graph,
    program: &P,
    round_limit: usize,
) -> Result<RunRecord<P::Output>, RoundLimitExceeded<P::Output>> {
    let n = g.n();
    let mut states: Vec<P::State> = g.vertices().map(|v| program.init(v, g.degree(v))).collect();
    let mut halted = vec![false; n];
    let mut active = n;
    let mut rounds_used = 0;

    while active > 0 && rounds_used < round_limit {
        rounds_used += 1;
        let round = rounds_used;
        let outboxes: Vec<Outbox<P::Message>> = (0..n)
            .map(|v| {
                if halted[v] {
                    Outbox::Silent
                } else {
                    program.send(&states[v], round)
                }
            })
            .collect();

        let mut inboxes: Vec<Vec<(Vertex, P::Message)>> = vec![Vec::new(); n];
        for (u, outbox) in outboxes.into_iter().enumerate() {
            match outbox {
                Outbox::Silent => {}
                Outbox::Broadcast(msg) => {
                    for &v in g.neighbors(u) {
                        if !halted[v] {
                            inboxes[v].push((u, msg.clone()));
                        }
                    }
                }
                Outbox::To(msgs) => {
                    for (v, msg) in msgs {
                        if v < n && !halted[v] && g.has_edge(u, v) {
                            inboxes[v].push((u, msg));
                        }
                    }
                }
            }
        }

        for (v, inbox) in inboxes.into_iter().enumerate() {
            if halted[v] {
                continue;
            }
            if program.receive(&mut states[v], round, inbox) {
                halted[v] = true;
                active -= 1;
            }
        }
    }

    let record = RunRecord {
        outputs: states.iter().map(|s| program.output(s)).collect(),
        rounds_used,
    };
    if active > 0 {
        return Err(RoundLimitExceeded {
            partial: record,
            still_running: (0..n).filter(|&v| !halted[v]).collect(),
        });
    }
    Ok(record)
}

/// What a node knows after gathering its radius-`r` view: the ids within
/// distance `r` and the full neighbor lists of the vertices within distance
/// `r - 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LocalView {
    pub center: Vertex,
    pub adjacency: BTreeMap<Vertex, Vec<Vertex>>,
}

impl LocalView {
    pub fn known_ids(&self) -> BTreeSet<Vertex> {
        let mut ids: BTreeSet<Vertex> = self.adjacency.keys().copied().collect();
        ids.extend(self.adjacency.values().flatten().copied());
        ids.insert(self.center);
        ids
    }
}

/// Collects the radius-`radius` view in exactly `radius` rounds (round 1
/// exchanges ids, later rounds exchange everything known) and hands it to
/// `decide`.
pub struct GatherBall<F> {
    pub radius: usize,
    pub decide: F,
}

pub struct GatherState {
    view: LocalView,
}

impl<F, O> NodeProgram for GatherBall<F>
where
    F: Fn(&LocalView) -> O,
{
    type State = GatherState;
    type Message = BTreeMap<Vertex, Vec<Vertex>>;
    type Output = O;

    fn init(&self, id: Vertex, _degree: usize) -> GatherState {
        GatherState {
            view: LocalView {
                center: id,
                adjacency: BTreeMap::new(),
            },
        }
    }

    fn send(&self, state: &GatherState, _round: usize) -> Outbox<Self::Message> {
        // Round 1 sends an empty map: the engine labels it with the sender id.
        Outbox::Broadcast(state.view.adjacency.clone())
    }

    fn receive(&self, state: &mut GatherState, round: usize, inbox: Vec<(Vertex, Self::Message)>) -> bool {
        if round == 1 {
            let neighbors = inbox.iter().map(|(u, _)| *u).collect();
            state.view.adjacency.insert(state.view.center, neighbors);
        } else {
            for (_, known) in inbox {
                for (v, list) in known {
                    state.view.adjacency.entry(v).or_insert(list);
                }
            }
        }
        round >= self.radius
    }

    fn output(&self, state: &GatherState) -> O {
        (self.decide)(&state.view)
    }
}

/// Gathers every node's radius-`radius` view. Takes exactly `radius` rounds
/// on any graph with at least one vertex.
pub fn gather_ball(g: &Graph, radius: usize) -> RunRecord<LocalView> {
    if radius == 0 {
        return RunRecord {
            outputs: g
                .vertices()
                .map(|v| LocalView {
                    center: v,
                    adjacency: BTreeMap::new(),
                })
                .collect(),
            rounds_used: 0,
        };
    }
    let program = GatherBall {
        radius,
        decide: |view: &LocalView| view.clone(),
    };
    run_rounds(g, &program, radius).expect("gathering halts after `radius` rounds")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_graph, Generator};

    struct DegreeEcho;

    impl NodeProgram for DegreeEcho {
        type State = Option<usize>;
        type Message = &'static str;
        type Output = usize;

        fn init(&self, _id: Vertex, _degree: usize) -> Option<usize> {
            None
        }
        fn send(&self, _state: &Option<usize>, _round: usize) -> Outbox<&'static str> {
            Outbox::Broadcast("hello")
        }
        fn receive(&self, state: &mut Option<usize>, _round: usize, inbox: Vec<(Vertex, &'static str)>) -> bool {
            *state = Some(inbox.len());
            true
        }
        fn output(&self, state: &Option<usize>) -> usize {
            state.unwrap_or(0)
        }
    }

    /// Never halts.
    struct Forever;

    impl NodeProgram for Forever {
        type State = usize;
        type Message = ();
        type Output = usize;

        fn init(&self, _id: Vertex, _degree: usize) -> usize {
            0
        }
        fn send(&self, _state: &usize, _round: usize) -> Outbox<()> {
            Outbox::Silent
        }
        fn receive(&self, state: &mut usize, round: usize, _inbox: Vec<(Vertex, ())>) -> bool {
            *state = round;
            false
        }
        fn output(&self, state: &usize) -> usize {
            *state
        }
    }

    fn path(n: usize) -> Graph {
        generate_graph(&Generator::Path { n }, 0).unwrap()
    }

    #[test]
    fn degree_echo_on_star() {
        let g = generate_graph(&Generator::Star { leaves: 5 }, 0).unwrap();
        let record = run_rounds(&g, &DegreeEcho, 10).unwrap();
        assert_eq!(record.outputs, vec![5, 1, 1, 1, 1, 1]);
        assert_eq!(record.rounds_used, 1);
    }

    #[test]
    fn two_hop_gather_on_p5() {
        let record = gather_ball(&path(5), 2);
        assert_eq!(record.rounds_used, 2);
        let center = &record.outputs[2];
        assert_eq!(center.known_ids(), (0..5).collect());
        // Endpoint 0 sees only up to distance 2.
        assert_eq!(record.outputs[0].known_ids(), (0..3).collect());
    }

    #[test]
    fn empty_graph_uses_no_rounds() {
        let record = run_rounds(&Graph::empty(0), &DegreeEcho, 10).unwrap();
        assert!(record.outputs.is_empty());
        assert_eq!(record.rounds_used, 0);
    }

    #[test]
    fn round_limit_is_an_error_with_partial_outputs() {
        let err = run_rounds(&path(3), &Forever, 4).unwrap_err();
        assert_eq!(err.partial.rounds_used, 4);
        assert_eq!(err.partial.outputs, vec![4, 4, 4]);
        assert_eq!(err.still_running, vec![0, 1, 2]);
        assert!(err.to_string().contains("round limit 4"));
    }

    #[test]
    fn directed_messages_only_reach_neighbors() {
        struct Poke;
        impl NodeProgram for Poke {
            type State = Vec<Vertex>;
            type Message = ();
            type Output = Vec<Vertex>;
            fn init(&self, _id: Vertex, _degree: usize) -> Vec<Vertex> {
                Vec::new()
            }
            fn send(&self, _state: &Vec<Vertex>, _round: usize) -> Outbox<()> {
                // Everyone tries to poke vertex 0 and vertex 99.
                Outbox::To(vec![(0, ()), (99, ())])
            }
            fn receive(&self, state: &mut Vec<Vertex>, _round: usize, inbox: Vec<(Vertex, ())>) -> bool {
                state.extend(inbox.into_iter().map(|(u, _)| u));
                true
            }
            fn output(&self, state: &Vec<Vertex>) -> Vec<Vertex> {
                state.clone()
            }
        }
        let record = run_rounds(&path(4), &Poke, 1).unwrap();
        assert_eq!(record.outputs[0], vec![1]);
        assert!(record.outputs[1..].iter().all(Vec::is_empty));
    }

    #[test]
    fn views_match_graph_balls() {
        let g = generate_graph(&Generator::RandomApollonian { n: 40 }, 5).unwrap();
        for radius in 1..4 {
            let record = gather_ball(&g, radius);
            assert_eq!(record.rounds_used, radius);
            for v in g.vertices() {
                let expected: BTreeSet<Vertex> = g.ball(v, radius).into_iter().map(|(u, _)| u).collect();
                assert_eq!(record.outputs[v].known_ids(), expected);
                for (u, _) in g.ball(v, radius - 1) {
                    assert_eq!(record.outputs[v].adjacency[&u], g.neighbors(u));
                }
            }
        }
    }

    #[test]
    fn locality_outside_the_ball_is_invisible() {
        // Output of vertex 0 after 2 rounds: its sorted ball. Rewiring
        // everything at distance > 2 must not change it.
        let g = path(12);
        let program = GatherBall {
            radius: 2,
            decide: |view: &LocalView| view.known_ids(),
        };
        let before = run_rounds(&g, &program, 2).unwrap();
        let mut surgered = g.clone();
        surgered.remove_edge(6, 7);
        surgered.add_edge(4, 11);
        surgered.add_edge(5, 9);
        let after = run_rounds(&surgered, &program, 2).unwrap();
        assert_eq!(before.outputs[0], after.outputs[0]);
        assert_eq!(before.outputs[1], after.outputs[1]);
        assert_ne!(before.outputs[4], after.outputs[4]);
    }
}
