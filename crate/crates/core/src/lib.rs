//! Deciding whether a walk drawn on a plane graph can be approximated by embeddings.
//!
//! Two independent deciders are provided: the iterated derivative
//! ([`derivative::decide_approximable`]) and the mod-2 van Kampen obstruction
//! ([`obstruction::decide_by_obstruction`]), the latter complete for open walks.
//! A strip-system search ([`oracle`]) and an exact geometric push-off
//! ([`pushoff`]) serve as ground truth for both.

pub mod corridor;
pub mod derivative;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod ingest;
pub mod obstruction;
pub mod oracle;
pub mod pushoff;
pub mod render;
pub mod report;

pub use derivative::{decide_approximable, derive, detect_transversal, winding_degree, Decision, Verdict};
pub use graph::{Instance, PlaneGraph, Walk};
pub use obstruction::{decide_by_obstruction, disjoinability_obstruction, van_kampen};
pub use oracle::{oracle_approximable, oracle_disjoinable, OracleVerdict};
