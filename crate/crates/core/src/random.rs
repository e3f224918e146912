//! Seeded random networks for tests, benchmarks and examples.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::model::{AntennaRef, Edge, Network, SuperNode};
use crate::rng;

/// Shape of a random DAG. Nodes are `S`, `R1`, ..., `D` in topological order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DagParams {
    /// Super-node count is uniform on `2..=max_nodes`.
    pub max_nodes: usize,
    /// Per-node antenna count is uniform on `1..=max_antennas`.
    pub max_antennas: usize,
    /// Chance that an ordered node pair is linked at all.
    pub pair_prob: f64,
    /// Chance of each antenna-level edge within a linked pair.
    pub edge_prob: f64,
}

impl Default for DagParams {
    fn default() -> Self {
        Self {
            max_nodes: 8,
            max_antennas: 3,
            pair_prob: 0.5,
            edge_prob: 0.4,
        }
    }
}

/// Shape of a random layered network: every edge goes from one layer to the
/// next, so all source-to-sink paths have the same number of hops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayeredParams {
    /// Hop count is uniform on `1..=max_hops`.
    pub max_hops: usize,
    /// Relays per inner layer, uniform on `1..=max_width`.
    pub max_width: usize,
    pub max_antennas: usize,
    pub edge_prob: f64,
}

impl Default for LayeredParams {
    fn default() -> Self {
        Self {
            max_hops: 4,
            max_width: 2,
            max_antennas: 3,
            edge_prob: 0.5,
        }
    }
}

struct Builder {
    nodes: Vec<SuperNode>,
    edges: Vec<Edge>,
}

impl Builder {
    fn has(&self, a: &AntennaRef, b: &AntennaRef) -> bool {
        self.edges.iter().any(|e| &e.from == a && &e.to == b)
    }

    fn link<R: Rng>(&mut self, rng: &mut R, u: usize, v: usize, prob: f64) -> bool {
        let mut added = false;
        for a in 0..self.nodes[u].antennas {
            for b in 0..self.nodes[v].antennas {
                if rng.random_bool(prob) {
                    self.push(rng, u, a, v, b);
                    added = true;
                }
            }
        }
        added
    }

    /// One edge between random antennas, unless that pair is already used.
    fn force<R: Rng>(&mut self, rng: &mut R, u: usize, v: usize) {
        let a = rng.random_range(0..self.nodes[u].antennas);
        let b = rng.random_range(0..self.nodes[v].antennas);
        self.push(rng, u, a, v, b);
    }

    fn push<R: Rng>(&mut self, rng: &mut R, u: usize, a: usize, v: usize, b: usize) {
        let from = AntennaRef::new(self.nodes[u].id.clone(), a);
        let to = AntennaRef::new(self.nodes[v].id.clone(), b);
        if !self.has(&from, &to) {
            self.edges.push(Edge::new(from, to, Some(rng::complex_gaussian(rng))));
        }
    }

    fn finish(self) -> Network {
        let s = self.nodes[0].id.clone();
        let t = self.nodes[self.nodes.len() - 1].id.clone();
        Network::new(self.nodes, self.edges, vec![s], vec![t]).expect("generator builds valid networks")
    }
}

/// Random acyclic network with coefficients drawn. Every node lies on some
/// `S -> D` route.
pub fn random_dag(params: &DagParams, seed: u64) -> Network {
    let mut rng = rng::stream(seed, 0);
    let n = rng.random_range(2..=params.max_nodes.max(2));
    let mut ids = vec!["S".to_string()];
    ids.extend((1..n - 1).map(|i| format!("R{i}")));
    ids.push("D".into());
    let nodes = ids
        .into_iter()
        .map(|id| SuperNode::new(id, rng.random_range(1..=params.max_antennas.max(1))))
        .collect();
    let mut b = Builder {
        nodes,
        edges: Vec::new(),
    };
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(params.pair_prob) && b.link(&mut rng, u, v, params.edge_prob) {
                has_out[u] = true;
                has_in[v] = true;
            }
        }
    }
    for v in 1..n {
        if !has_in[v] {
            let u = rng.random_range(0..v);
            b.force(&mut rng, u, v);
            has_out[u] = true;
        }
    }
    for u in 0..n - 1 {
        if !has_out[u] {
            let v = rng.random_range(u + 1..n);
            b.force(&mut rng, u, v);
        }
    }
    b.finish()
}

/// Random layered network with coefficients drawn. Relays are named
/// `R<layer>_<k>`.
pub fn random_layered(params: &LayeredParams, seed: u64) -> Network {
    let mut rng = rng::stream(seed, 0);
    let hops = rng.random_range(1..=params.max_hops.max(1));
    let mut layers: Vec<Vec<usize>> = Vec::with_capacity(hops + 1);
    let mut nodes = Vec::new();
    let mut add = |id: String, rng: &mut rand_chacha::ChaCha8Rng| {
        nodes.push(SuperNode::new(id, rng.random_range(1..=params.max_antennas.max(1))));
        nodes.len() - 1
    };
    layers.push(vec![add("S".into(), &mut rng)]);
    for l in 1..hops {
        let w = rng.random_range(1..=params.max_width.max(1));
        let layer = (0..w).map(|k| add(format!("R{l}_{k}"), &mut rng)).collect();
        layers.push(layer);
    }
    layers.push(vec![add("D".into(), &mut rng)]);
    let mut b = Builder {
        nodes,
        edges: Vec::new(),
    };
    for l in 0..hops {
        let (cur, next) = (&layers[l], &layers[l + 1]);
        let mut has_in = vec![false; next.len()];
        let mut has_out = vec![false; cur.len()];
        for (i, &u) in cur.iter().enumerate() {
            for (j, &v) in next.iter().enumerate() {
                if b.link(&mut rng, u, v, params.edge_prob) {
                    has_out[i] = true;
                    has_in[j] = true;
                }
            }
        }
        for (j, &v) in next.iter().enumerate() {
            if !has_in[j] {
                let i = rng.random_range(0..cur.len());
                b.force(&mut rng, cur[i], v);
                has_out[i] = true;
            }
        }
        for (i, &u) in cur.iter().enumerate() {
            if !has_out[i] {
                let v = *next.choose(&mut rng).expect("layers are nonempty");
                b.force(&mut rng, u, v);
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;
    use crate::relay::LayerPlan;

    #[test]
    fn dags_are_valid_and_bounded() {
        let p = DagParams::default();
        for seed in 0..300 {
            let n = random_dag(&p, seed);
            assert!(validate(&n).ok, "seed {seed}");
            assert!(n.node_count() <= 8 && n.max_antennas() <= 3);
            assert!(n.has_all_coefficients());
            let s = n.node_index("S").unwrap();
            let t = n.node_index("D").unwrap();
            let from_s = n.reachable_from(s);
            let to_t = n.reaching(t);
            assert!((0..n.node_count()).all(|v| from_s[v] && to_t[v]), "seed {seed}");
        }
    }

    #[test]
    fn layered_is_layered() {
        let p = LayeredParams::default();
        for seed in 0..200 {
            let n = random_layered(&p, seed);
            assert!(validate(&n).ok, "seed {seed}");
            let plan = LayerPlan::new(&n, "S", "D").unwrap();
            assert!(plan.is_layered(), "seed {seed}");
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_dag(&DagParams::default(), 5), random_dag(&DagParams::default(), 5));
        assert_eq!(
            random_layered(&LayeredParams::default(), 5),
            random_layered(&LayeredParams::default(), 5)
        );
    }
}
