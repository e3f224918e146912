use crate::model::Network;

use super::{cut_matrix, enumerate_cuts, max_flow, min_over_cuts, numerical_rank, terminals, Cut, CutError};

/// Degrees of freedom of one flow with the cut that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DofResult {
    pub dof: usize,
    pub argmin: Cut,
}

/// Min-cut rank over all cuts between `s` and `t`.
///
/// Every cut is enumerated, not only the minimum-value ones: a cut with
/// more crossing edges can still have a smaller rank.
pub fn dof(net: &Network, s: &str, t: &str, rel_tol: f64) -> Result<DofResult, CutError> {
    let cuts = enumerate_cuts(net, s, t)?;
    let (dof, argmin) = min_over_cuts(&cuts, |cut| {
        cut_matrix(net, cut).map(|m| numerical_rank(&m.matrix, rel_tol))
    })?;
    Ok(DofResult { dof, argmin })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticastDof {
    pub dof: usize,
    pub per_sink: Vec<(String, DofResult)>,
}

/// Multicast DOF: the smallest per-sink DOF.
pub fn multicast_dof<S: AsRef<str>>(
    net: &Network,
    s: &str,
    sinks: &[S],
    rel_tol: f64,
) -> Result<MulticastDof, CutError> {
    if sinks.is_empty() {
        return Err(CutError::NoSinks);
    }
    let per_sink = sinks
        .iter()
        .map(|t| dof(net, s, t.as_ref(), rel_tol).map(|d| (t.as_ref().to_string(), d)))
        .collect::<Result<Vec<_>, _>>()?;
    let dof = per_sink.iter().map(|(_, d)| d.dof).min().unwrap_or(0);
    Ok(MulticastDof { dof, per_sink })
}

/// Diversity and DOF of one (source, sink) flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAnalysis {
    pub source: String,
    pub sink: String,
    pub min_cut_value: usize,
    pub dof: usize,
    pub argmin_cut_diversity: Cut,
    pub argmin_cut_dof: Cut,
}

impl FlowAnalysis {
    /// Maximum achievable diversity order; the min-cut value.
    pub fn diversity(&self) -> usize {
        self.min_cut_value
    }
}

pub fn analyze_flow(net: &Network, s: &str, t: &str, rel_tol: f64) -> Result<FlowAnalysis, CutError> {
    let (si, ti) = terminals(net, s, t)?;
    let mf = max_flow(net, si, ti);
    let d = dof(net, s, t, rel_tol)?;
    Ok(FlowAnalysis {
        source: s.to_string(),
        sink: t.to_string(),
        min_cut_value: mf.value,
        dof: d.dof,
        argmin_cut_diversity: Cut::from_mask(net, mf.min_cut_side),
        argmin_cut_dof: d.argmin,
    })
}

/// Brute-force minimum cut value, the oracle for the max-flow computation.
pub fn brute_force_min_cut(net: &Network, s: &str, t: &str) -> Result<(usize, Cut), CutError> {
    let cuts = enumerate_cuts(net, s, t)?;
    min_over_cuts(&cuts, |c| Ok::<_, CutError>(c.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_coefficients, AntennaRef, Edge, SuperNode};
    use crate::cuts::DEFAULT_REL_TOL;

    fn net(nodes: &[(&str, usize)], edges: &[(&str, usize, &str, usize)], sinks: &[&str]) -> Network {
        let n = Network::new(
            nodes.iter().map(|(id, k)| SuperNode::new(*id, *k)).collect(),
            edges
                .iter()
                .map(|(a, i, b, j)| Edge::new(AntennaRef::new(*a, *i), AntennaRef::new(*b, *j), None))
                .collect(),
            vec![nodes[0].0.to_string()],
            sinks.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap();
        sample_coefficients(&n, 11)
    }

    #[test]
    fn diamond_has_one_dof() {
        let d = net(
            &[("S", 1), ("R1", 1), ("R2", 1), ("D", 1)],
            &[("S", 0, "R1", 0), ("S", 0, "R2", 0), ("R1", 0, "D", 0), ("R2", 0, "D", 0)],
            &["D"],
        );
        let ranks: Vec<usize> = enumerate_cuts(&d, "S", "D")
            .unwrap()
            .map(|c| numerical_rank(&cut_matrix(&d, &c).unwrap().matrix, DEFAULT_REL_TOL))
            .collect();
        assert_eq!(ranks, vec![1, 2, 2, 1]);
        let r = dof(&d, "S", "D", DEFAULT_REL_TOL).unwrap();
        assert_eq!(r.dof, 1);
        assert_eq!(r.argmin.describe(&d), "{S}");
    }

    #[test]
    fn bottleneck_relay() {
        let n = net(
            &[("S", 2), ("R", 1), ("D", 2)],
            &[("S", 0, "R", 0), ("S", 1, "R", 0), ("R", 0, "D", 0), ("R", 0, "D", 1)],
            &["D"],
        );
        let a = analyze_flow(&n, "S", "D", DEFAULT_REL_TOL).unwrap();
        assert_eq!((a.diversity(), a.dof), (2, 1));
    }

    #[test]
    fn broadcast_multicast() {
        let n = net(
            &[("S", 1), ("D1", 1), ("D2", 1)],
            &[("S", 0, "D1", 0), ("S", 0, "D2", 0)],
            &["D1", "D2"],
        );
        let m = multicast_dof(&n, "S", &["D1", "D2"], DEFAULT_REL_TOL).unwrap();
        assert_eq!(m.dof, 1);
        assert_eq!(m.per_sink.len(), 2);
        let single = multicast_dof(&n, "S", &["D1"], DEFAULT_REL_TOL).unwrap();
        assert_eq!(single.dof, dof(&n, "S", "D1", DEFAULT_REL_TOL).unwrap().dof);
        assert!(matches!(
            multicast_dof::<&str>(&n, "S", &[], DEFAULT_REL_TOL),
            Err(CutError::NoSinks)
        ));
    }

    #[test]
    fn absent_coefficient_propagates() {
        let n = Network::new(
            vec![SuperNode::new("S", 1), SuperNode::new("D", 1)],
            vec![Edge::new(AntennaRef::new("S", 0), AntennaRef::new("D", 0), None)],
            vec!["S".into()],
            vec!["D".into()],
        )
        .unwrap();
        assert_eq!(
            dof(&n, "S", "D", DEFAULT_REL_TOL).unwrap_err(),
            CutError::MissingCoefficient { edge: 0 }
        );
    }
}
