use crate::cuts::edge_disjoint_paths;
use crate::model::Network;

use super::OutageError;

/// One edge transmits per slot. Paths are served one after another, each
/// path's edges in order from source to sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivationSchedule {
    pub paths: Vec<Vec<usize>>,
    pub order: Vec<usize>,
}

impl ActivationSchedule {
    pub fn from_paths(paths: Vec<Vec<usize>>) -> Self {
        let order = paths.iter().flatten().copied().collect();
        Self { paths, order }
    }

    pub fn total_slots(&self) -> usize {
        self.order.len()
    }

    /// Number of parallel paths.
    pub fn width(&self) -> usize {
        self.paths.len()
    }
}

pub fn build_schedule(net: &Network, s: &str, t: &str) -> Result<ActivationSchedule, OutageError> {
    let paths = edge_disjoint_paths(net, s, t)?;
    if paths.is_empty() {
        return Err(OutageError::NoPath {
            from: s.into(),
            to: t.into(),
        });
    }
    Ok(ActivationSchedule::from_paths(paths))
}
