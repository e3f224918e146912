//! Outage simulation over the edge-disjoint path schedule and diversity
//! slope estimation.

mod channel;
mod schedule;
mod simulate;
mod slope;

pub use channel::{effective_snr, path_channel};
pub use schedule::{build_schedule, ActivationSchedule};
pub use simulate::{
    simulate_flows, simulate_outage, simulate_paths, snr_grid, Estimator, FlowCurve, OutageCurve, OutagePoint,
    SimConfig, BLOCK,
};
pub use slope::{estimate_diversity, estimate_diversity_auto, DiversityEstimate, AUTO_WINDOW_DB, MIN_EVENTS};

use thiserror::Error;

use crate::cuts::CutError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OutageError {
    #[error("no path from `{from}` to `{to}`")]
    NoPath { from: String, to: String },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("SNR grid is empty or malformed")]
    BadGrid,
    #[error("rate must be a nonnegative number, got {0}")]
    BadRate(f64),
    #[error("fit window holds {found} usable points, need 2")]
    InsufficientPoints { found: usize },
    #[error("no outage observed at {snr_db} dB; more trials are needed")]
    ZeroEstimate { snr_db: f64 },
    #[error(transparent)]
    Cut(#[from] CutError),
}
