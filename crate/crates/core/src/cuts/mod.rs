//! Cuts, cut transfer matrices, and the two min-cut quantities of a flow:
//! maximum diversity (fewest crossing edges) and degrees of freedom
//! (smallest cut-matrix rank).

mod analysis;
mod enumerate;
mod flow;
mod matrix;
mod rank;

pub use analysis::{analyze_flow, brute_force_min_cut, dof, multicast_dof, DofResult, FlowAnalysis, MulticastDof};
pub use enumerate::{cut_value, enumerate_cuts, map_cuts, min_over_cuts, terminals, Cut, CutEnumerator, MAX_FREE_NODES};
pub use flow::{edge_disjoint_paths, max_diversity, max_flow, min_cut, min_cut_value, MaxFlow};
pub use matrix::{cut_matrix, ComplexCutMatrix, CutLayout};
pub use rank::{numerical_rank, DEFAULT_REL_TOL};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("source and sink are both `{0}`")]
    SameTerminal(String),
    #[error("{free} non-terminal super-nodes exceed the enumeration ceiling of {max}")]
    CeilingExceeded { free: usize, max: usize },
    #[error("edge {edge} has no coefficient; sample coefficients first")]
    MissingCoefficient { edge: usize },
    #[error("multicast needs at least one sink")]
    NoSinks,
}
