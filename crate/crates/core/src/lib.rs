//! Desk-scale LOCAL-model simulator for constant-round dominating set
//! approximation on planar graphs and four restricted planar classes.
//!
//! The crate is organised around the pieces of the pipeline:
//!
//! * [`graph`], [`generators`], [`sanity`]: graphs, the edge-list format,
//!   class-specific instance generators and necessary-condition screening.
//! * [`local`]: a synchronous-round message-passing engine that counts rounds.
//! * [`phases`]: the three selection phases as node programs (plus a direct
//!   centralized path used for cross-checking).
//! * [`oracle`]: exact minimum dominating set by enumeration and by
//!   branch-and-bound.
//! * [`lp`]: the worst-case linear programs, solved in exact rational
//!   arithmetic.
//! * [`harness`]: experiment configs and report rows.

pub mod class;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod local;
pub mod lp;
pub mod oracle;
pub mod phases;
pub mod sanity;

#[cfg(test)]
pub(crate) mod testing;

pub use class::{ClassParams, GraphClass};
pub use error::{Error, ParseError, Result};
pub use generators::{generate_graph, Generator};
pub use graph::{parse_edge_list, parse_vertex_set, verify_dominating_set, Graph, Vertex};
pub use harness::{run_experiment, ExperimentConfig, ReportRow};
pub use local::{run_rounds, NodeProgram, Outbox, RunRecord};
pub use lp::{build_lp, factor_report, simplex_solve, FactorReport, LpModel, LpSolution, LpStatus};
pub use oracle::{gamma_branch_bound, gamma_bruteforce, OracleResult};
pub use phases::{run_pipeline, run_pipeline_direct, Color, DomSetResult, PhaseTrace};
pub use sanity::{check_class_sanity, SanityViolation};
