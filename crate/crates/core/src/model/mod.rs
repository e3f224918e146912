//! Multi-antenna wireless networks as edge-labelled directed graphs.
//!
//! Terminals are super-nodes; each antenna is a small node, and every edge
//! joins two antennas with a scalar complex fading coefficient. An edge is
//! only present when its coefficient is nonzero.

mod format;
mod network;
mod sampling;
mod validate;
mod wireline;

pub use format::{parse_document, parse_network, to_json, Document, FormatError, LiftFields};
pub use network::{AntennaRef, Edge, Endpoints, Network, SuperNode};
pub use sampling::{sample_coefficients, sample_coefficients_with, Sampler};
pub use validate::{validate, ValidationReport, Violation, ViolationCode};
pub use wireline::{embed_wireline, Link, Wireline};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("node `{0}` must have at least one antenna")]
    NoAntennas(String),
    #[error("unknown node `{id}` referenced by {context}")]
    UnknownNode { id: String, context: String },
    #[error("edge {edge}: antenna {antenna} out of range for `{node}` ({antennas} antennas)")]
    AntennaOutOfRange {
        node: String,
        antenna: usize,
        antennas: usize,
        edge: usize,
    },
    #[error("edge {edge}: coefficient must be nonzero and finite")]
    ZeroCoefficient { edge: usize },
    #[error("edge {edge}: duplicates an earlier edge between the same antennas")]
    DuplicateEdge { edge: usize },
}
