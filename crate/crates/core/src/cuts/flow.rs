//! Unit-capacity max-flow on the super-node multigraph.
//!
//! Each antenna-level edge is one arc of capacity one. Augmenting paths are
//! found by breadth-first search that scans forward arcs and then reverse
//! arcs in edge-index order, so the flow and its path decomposition are
//! deterministic.

use std::collections::VecDeque;

use crate::model::Network;

use super::{terminals, Cut, CutError};

/// An integral maximum flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: usize,
    /// Per edge: carries one unit or nothing.
    pub flow: Vec<bool>,
    /// Nodes reachable from the source in the final residual graph; the
    /// source side of a minimum cut.
    pub min_cut_side: u64,
}

#[derive(Clone, Copy)]
enum Step {
    Forward(usize),
    Backward(usize),
}

pub fn max_flow(net: &Network, s: usize, t: usize) -> MaxFlow {
    let n = net.node_count();
    let out = net.out_edges();
    let inc = net.in_edges();
    let ends = net.all_endpoints();
    let mut flow = vec![false; net.edge_count()];
    let mut value = 0;

    loop {
        let mut pred: Vec<Option<Step>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &e in &out[v] {
                let h = ends[e].head;
                if !flow[e] && !seen[h] {
                    seen[h] = true;
                    pred[h] = Some(Step::Forward(e));
                    queue.push_back(h);
                }
            }
            for &e in &inc[v] {
                let tl = ends[e].tail;
                if flow[e] && !seen[tl] {
                    seen[tl] = true;
                    pred[tl] = Some(Step::Backward(e));
                    queue.push_back(tl);
                }
            }
        }
        if !seen[t] {
            let min_cut_side = (0..n).filter(|&v| seen[v]).fold(0u64, |m, v| m | 1 << v);
            return MaxFlow {
                value,
                flow,
                min_cut_side,
            };
        }
        let mut v = t;
        while v != s {
            match pred[v].expect("BFS tree reaches the sink") {
                Step::Forward(e) => {
                    flow[e] = true;
                    v = ends[e].tail;
                }
                Step::Backward(e) => {
                    flow[e] = false;
                    v = ends[e].head;
                }
            }
        }
        value += 1;
    }
}

/// Max-flow value between `s` and `t`; equals the minimum cut value.
pub fn min_cut_value(net: &Network, s: &str, t: &str) -> Result<usize, CutError> {
    let (si, ti) = terminals(net, s, t)?;
    Ok(max_flow(net, si, ti).value)
}

/// The theorem-facing name for [`min_cut_value`]: the maximum diversity
/// order of the flow from `s` to `t`.
pub fn max_diversity(net: &Network, s: &str, t: &str) -> Result<usize, CutError> {
    min_cut_value(net, s, t)
}

/// A minimum cut found from the max-flow residual graph.
pub fn min_cut(net: &Network, s: &str, t: &str) -> Result<Cut, CutError> {
    let (si, ti) = terminals(net, s, t)?;
    Ok(Cut::from_mask(net, max_flow(net, si, ti).min_cut_side))
}

/// Edge-disjoint antenna-level paths from `s` to `t`, one per unit of flow.
/// Each path is a list of edge indices; consecutive edges meet at the same
/// super-node.
pub fn edge_disjoint_paths(net: &Network, s: &str, t: &str) -> Result<Vec<Vec<usize>>, CutError> {
    let (si, ti) = terminals(net, s, t)?;
    let mf = max_flow(net, si, ti);
    Ok(decompose(net, si, ti, &mf))
}

fn decompose(net: &Network, s: usize, t: usize, mf: &MaxFlow) -> Vec<Vec<usize>> {
    let out = net.out_edges();
    let ends = net.all_endpoints();
    let mut left = mf.flow.clone();
    let mut paths = Vec::with_capacity(mf.value);
    for _ in 0..mf.value {
        let mut path: Vec<usize> = Vec::new();
        // at[v] = length of `path` when v was entered, for cycle removal.
        let mut at: Vec<Option<usize>> = vec![None; net.node_count()];
        let mut v = s;
        at[s] = Some(0);
        while v != t {
            let e = *out[v]
                .iter()
                .find(|&&e| left[e])
                .expect("flow conservation leaves an outgoing unit");
            left[e] = false;
            path.push(e);
            v = ends[e].head;
            if let Some(k) = at[v] {
                // Closed a flow cycle; drop it.
                for &c in &path[k..] {
                    let h = ends[c].head;
                    if h != v {
                        at[h] = None;
                    }
                }
                path.truncate(k);
            } else {
                at[v] = Some(path.len());
            }
        }
        paths.push(path);
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::enumerate_cuts;
    use crate::model::{AntennaRef, Edge, SuperNode};

    fn single(ids: &[&str], links: &[(&str, &str)]) -> Network {
        Network::new(
            ids.iter().map(|id| SuperNode::new(*id, 1)).collect(),
            links
                .iter()
                .map(|(a, b)| Edge::new(AntennaRef::new(*a, 0), AntennaRef::new(*b, 0), None))
                .collect(),
            vec![ids[0].to_string()],
            vec![ids[ids.len() - 1].to_string()],
        )
        .unwrap()
    }

    fn diamond() -> Network {
        single(
            &["S", "R1", "R2", "D"],
            &[("S", "R1"), ("S", "R2"), ("R1", "D"), ("R2", "D")],
        )
    }

    #[test]
    fn diamond_matches_enumeration() {
        let net = diamond();
        let brute = enumerate_cuts(&net, "S", "D").unwrap().map(|c| c.value()).min().unwrap();
        assert_eq!(brute, 2);
        assert_eq!(min_cut_value(&net, "S", "D").unwrap(), 2);
        assert_eq!(max_diversity(&net, "S", "D").unwrap(), 2);
    }

    #[test]
    fn diamond_paths() {
        let net = diamond();
        assert_eq!(edge_disjoint_paths(&net, "S", "D").unwrap(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn chain_has_one_path_of_two_hops() {
        let net = single(&["S", "R", "D"], &[("S", "R"), ("R", "D")]);
        assert_eq!(min_cut_value(&net, "S", "D").unwrap(), 1);
        assert_eq!(edge_disjoint_paths(&net, "S", "D").unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn mimo_counts_every_antenna_pair() {
        let mut edges = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                edges.push(Edge::new(AntennaRef::new("S", a), AntennaRef::new("D", b), None));
            }
        }
        let net = Network::new(
            vec![SuperNode::new("S", 2), SuperNode::new("D", 2)],
            edges,
            vec!["S".into()],
            vec!["D".into()],
        )
        .unwrap();
        assert_eq!(min_cut_value(&net, "S", "D").unwrap(), 4);
        assert_eq!(edge_disjoint_paths(&net, "S", "D").unwrap().len(), 4);
    }

    #[test]
    fn residual_cut_is_minimum() {
        let net = single(
            &["S", "A", "B", "D"],
            &[("S", "A"), ("A", "B"), ("S", "B"), ("B", "D")],
        );
        let cut = min_cut(&net, "S", "D").unwrap();
        assert_eq!(cut.value(), 1);
        assert_eq!(min_cut_value(&net, "S", "D").unwrap(), 1);
    }

    #[test]
    fn needs_reverse_arcs() {
        // Greedy S-A-B-D blocks both routes unless flow on A-B is cancelled.
        let net = single(
            &["S", "A", "B", "D"],
            &[("S", "A"), ("A", "B"), ("B", "D"), ("S", "B"), ("A", "D")],
        );
        assert_eq!(min_cut_value(&net, "S", "D").unwrap(), 2);
        let paths = edge_disjoint_paths(&net, "S", "D").unwrap();
        assert_eq!(paths.len(), 2);
    }

    #[test]
    fn disconnected_gives_zero() {
        let net = single(&["S", "R", "D"], &[("S", "R")]);
        assert_eq!(min_cut_value(&net, "S", "D").unwrap(), 0);
        assert!(edge_disjoint_paths(&net, "S", "D").unwrap().is_empty());
    }
}
