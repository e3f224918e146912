use std::collections::{HashMap, HashSet};
use std::fmt;

use num_complex::Complex64;

use super::ModelError;

/// One antenna of a super-node, addressed by node id and 0-based index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntennaRef {
    pub node: String,
    pub antenna: usize,
}

impl AntennaRef {
    pub fn new(node: impl Into<String>, antenna: usize) -> Self {
        Self {
            node: node.into(),
            antenna,
        }
    }
}

impl fmt::Display for AntennaRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.node, self.antenna)
    }
}

/// A terminal with one or more antennas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperNode {
    pub id: String,
    pub antennas: usize,
}

impl SuperNode {
    pub fn new(id: impl Into<String>, antennas: usize) -> Self {
        Self {
            id: id.into(),
            antennas,
        }
    }
}

/// A scalar link between two antennas. `coeff == None` means the fading
/// coefficient has not been drawn yet.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub from: AntennaRef,
    pub to: AntennaRef,
    pub coeff: Option<Complex64>,
}

impl Edge {
    pub fn new(from: AntennaRef, to: AntennaRef, coeff: Option<Complex64>) -> Self {
        Self { from, to, coeff }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

/// Resolved integer endpoints of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Endpoints {
    pub tail: usize,
    pub tail_antenna: usize,
    pub head: usize,
    pub head_antenna: usize,
}

/// Edge-labelled directed graph over antennas grouped into super-nodes.
///
/// Construction checks referential integrity (known node ids, antenna indices
/// in range, nonzero coefficients, no duplicate antenna pairs). Structural
/// properties that only matter for analysis, such as acyclicity and
/// reachability, are reported by [`super::validate`].
#[derive(Debug, Clone)]
pub struct Network {
    nodes: Vec<SuperNode>,
    edges: Vec<Edge>,
    sources: Vec<String>,
    sinks: Vec<String>,
    index: HashMap<String, usize>,
    ends: Vec<Endpoints>,
    antenna_offset: Vec<usize>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.edges == other.edges
            && self.sources == other.sources
            && self.sinks == other.sinks
    }
}

impl Network {
    pub fn new(
        nodes: Vec<SuperNode>,
        edges: Vec<Edge>,
        sources: Vec<String>,
        sinks: Vec<String>,
    ) -> Result<Self, ModelError> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if node.antennas == 0 {
                return Err(ModelError::NoAntennas(node.id.clone()));
            }
            if index.insert(node.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateNode(node.id.clone()));
            }
        }

        let resolve = |r: &AntennaRef, edge: usize| -> Result<(usize, usize), ModelError> {
            let &n = index.get(&r.node).ok_or_else(|| ModelError::UnknownNode {
                id: r.node.clone(),
                context: format!("edge {edge}"),
            })?;
            if r.antenna >= nodes[n].antennas {
                return Err(ModelError::AntennaOutOfRange {
                    node: r.node.clone(),
                    antenna: r.antenna,
                    antennas: nodes[n].antennas,
                    edge,
                });
            }
            Ok((n, r.antenna))
        };

        let mut ends = Vec::with_capacity(edges.len());
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            let (tail, tail_antenna) = resolve(&e.from, i)?;
            let (head, head_antenna) = resolve(&e.to, i)?;
            if let Some(c) = e.coeff {
                if c.norm_sqr() == 0.0 || !c.re.is_finite() || !c.im.is_finite() {
                    return Err(ModelError::ZeroCoefficient { edge: i });
                }
            }
            if !seen.insert((tail, tail_antenna, head, head_antenna)) {
                return Err(ModelError::DuplicateEdge { edge: i });
            }
            ends.push(Endpoints {
                tail,
                tail_antenna,
                head,
                head_antenna,
            });
        }

        for id in sources.iter().chain(sinks.iter()) {
            if !index.contains_key(id) {
                return Err(ModelError::UnknownNode {
                    id: id.clone(),
                    context: "terminal list".into(),
                });
            }
        }

        let mut antenna_offset = Vec::with_capacity(nodes.len() + 1);
        let mut acc = 0;
        for n in &nodes {
            antenna_offset.push(acc);
            acc += n.antennas;
        }
        antenna_offset.push(acc);

        Ok(Self {
            nodes,
            edges,
            sources,
            sinks,
            index,
            ends,
            antenna_offset,
        })
    }

    pub fn nodes(&self) -> &[SuperNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    pub fn sinks(&self) -> &[String] {
        &self.sinks
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn node_id(&self, index: usize) -> &str {
        &self.nodes[index].id
    }

    pub fn antennas(&self, node: usize) -> usize {
        self.nodes[node].antennas
    }

    /// Largest antenna count over all super-nodes.
    pub fn max_antennas(&self) -> usize {
        self.nodes.iter().map(|n| n.antennas).max().unwrap_or(0)
    }

    /// Number of antenna-level ("small") nodes.
    pub fn total_antennas(&self) -> usize {
        *self.antenna_offset.last().unwrap_or(&0)
    }

    /// Global index of an antenna in the expanded antenna-level graph.
    pub fn antenna_index(&self, node: usize, antenna: usize) -> usize {
        self.antenna_offset[node] + antenna
    }

    pub fn endpoints(&self, edge: usize) -> Endpoints {
        self.ends[edge]
    }

    pub fn all_endpoints(&self) -> &[Endpoints] {
        &self.ends
    }

    /// Every coefficient, or the index of the first absent one.
    pub fn coefficients(&self) -> Result<Vec<Complex64>, usize> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| e.coeff.ok_or(i))
            .collect()
    }

    pub fn has_all_coefficients(&self) -> bool {
        self.edges.iter().all(|e| e.coeff.is_some())
    }

    /// Same topology with a new coefficient per edge.
    pub fn with_coefficients(&self, coeffs: Vec<Option<Complex64>>) -> Result<Self, ModelError> {
        assert_eq!(coeffs.len(), self.edges.len(), "one coefficient per edge");
        let edges = self
            .edges
            .iter()
            .zip(coeffs)
            .map(|(e, c)| Edge::new(e.from.clone(), e.to.clone(), c))
            .collect();
        Self::new(
            self.nodes.clone(),
            edges,
            self.sources.clone(),
            self.sinks.clone(),
        )
    }

    /// Every declared (source, sink) pair with distinct endpoints.
    pub fn flows(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for s in &self.sources {
            for t in &self.sinks {
                if s != t {
                    out.push((s.clone(), t.clone()));
                }
            }
        }
        out
    }

    /// Outgoing edge indices per super-node, in edge order.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.ends.iter().enumerate() {
            out[e.tail].push(i);
        }
        out
    }

    /// Incoming edge indices per super-node, in edge order.
    pub fn in_edges(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nodes.len()];
        for (i, e) in self.ends.iter().enumerate() {
            inc[e.head].push(i);
        }
        inc
    }

    /// Super-nodes reachable from `from` along edges.
    pub fn reachable_from(&self, from: usize) -> Vec<bool> {
        let out = self.out_edges();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            for &e in &out[v] {
                let h = self.ends[e].head;
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        seen
    }

    /// Super-nodes that can reach `to`.
    pub fn reaching(&self, to: usize) -> Vec<bool> {
        let inc = self.in_edges();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![to];
        seen[to] = true;
        while let Some(v) = stack.pop() {
            for &e in &inc[v] {
                let t = self.ends[e].tail;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Topological order of the super-nodes flagged in `keep`, using only edges
    /// between kept nodes. `None` if that subgraph has a cycle (self-loops count).
    pub fn topological_order(&self, keep: &[bool]) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for e in &self.ends {
            if keep[e.tail] && keep[e.head] {
                indeg[e.head] += 1;
            }
        }
        let out = self.out_edges();
        // Lowest index first keeps the order deterministic.
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| keep[v] && indeg[v] == 0).collect();
        let mut order = Vec::new();
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &e in &out[v] {
                let h = self.ends[e].head;
                if keep[h] {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        ready.insert(h);
                    }
                }
            }
        }
        let kept = keep.iter().filter(|&&k| k).count();
        (order.len() == kept).then_some(order)
    }
}
