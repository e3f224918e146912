//! Amplify-and-forward with linear relay matrices: end-to-end transfer
//! matrices over unfolded time slots, achievable DOF, and zero-error linear
//! codes for deterministic networks.

mod achievable;
mod unfold;
mod zero_error;

pub use achievable::{achievable_dof_af, achievable_rank_fp, best_relays_fp, AfOutcome};
pub use unfold::{unfold_complex, unfold_fp, EndToEndMatrix, LayerPlan, UnfoldLayout};
pub use zero_error::{extract_zero_error_code, verify_zero_error, ZeroErrorCheck, ZeroErrorCode, EXHAUSTIVE_LIMIT};

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::galois::{FpMatrix, PrimeField};
use crate::model::Network;
use crate::rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelayError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("no route from `{from}` to `{to}`")]
    NoRoute { from: String, to: String },
    #[error("the routed part of the network has a cycle")]
    Cyclic,
    #[error("at least one slot is required")]
    NoSlots,
    #[error("relay `{0}` has no matrix")]
    MissingRelay(String),
    #[error("relay `{node}` needs a {expected}x{expected} matrix, got {found:?}")]
    RelayShape {
        node: String,
        expected: usize,
        found: (usize, usize),
    },
    #[error("relay `{0}` is over a different field")]
    FieldMismatch(String),
    #[error("edge {edge} has no coefficient")]
    MissingCoefficient { edge: usize },
    #[error("end-to-end matrix has rank 0; no code exists")]
    NoCode,
}

/// One square matrix per relay, keyed by super-node id. The same matrix is
/// applied in every slot.
#[derive(Debug, Clone, PartialEq)]
pub struct RelayAssignment<M> {
    per_node: BTreeMap<String, M>,
}

impl<M> Default for RelayAssignment<M> {
    fn default() -> Self {
        Self {
            per_node: BTreeMap::new(),
        }
    }
}

impl<M> FromIterator<(String, M)> for RelayAssignment<M> {
    fn from_iter<I: IntoIterator<Item = (String, M)>>(iter: I) -> Self {
        Self {
            per_node: iter.into_iter().collect(),
        }
    }
}

impl<M> RelayAssignment<M> {
    pub fn get(&self, node: &str) -> Option<&M> {
        self.per_node.get(node)
    }

    pub fn insert(&mut self, node: impl Into<String>, m: M) {
        self.per_node.insert(node.into(), m);
    }

    pub fn len(&self) -> usize {
        self.per_node.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_node.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &M)> {
        self.per_node.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// Nodes that relay: every node that is neither a declared source nor sink.
fn relay_nodes(net: &Network) -> impl Iterator<Item = (usize, &str)> {
    net.nodes()
        .iter()
        .enumerate()
        .filter(|(_, n)| !net.sources().contains(&n.id) && !net.sinks().contains(&n.id))
        .map(|(i, n)| (i, n.id.as_str()))
}

pub(crate) fn complex_relays_from<R: Rng>(net: &Network, rng: &mut R) -> RelayAssignment<DMatrix<Complex64>> {
    relay_nodes(net)
        .map(|(v, id)| {
            let n = net.antennas(v);
            let m = DMatrix::from_fn(n, n, |_, _| rng::complex_gaussian(rng));
            (id.to_string(), m)
        })
        .collect()
}

pub(crate) fn fp_relays_from<R: Rng>(net: &Network, field: PrimeField, rng: &mut R) -> RelayAssignment<FpMatrix> {
    let p = field.modulus();
    relay_nodes(net)
        .map(|(v, id)| {
            let n = net.antennas(v);
            let m = FpMatrix::from_fn(field, n, n, |_, _| rng.random_range(0..p));
            (id.to_string(), m)
        })
        .collect()
}

/// Relay matrices with iid unit complex Gaussian entries.
pub fn random_relays_complex(net: &Network, seed: u64) -> RelayAssignment<DMatrix<Complex64>> {
    complex_relays_from(net, &mut rng::stream(seed, 0))
}

/// Relay matrices with iid entries uniform on `F_p`.
pub fn random_relays_fp(net: &Network, field: PrimeField, seed: u64) -> RelayAssignment<FpMatrix> {
    fp_relays_from(net, field, &mut rng::stream(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AntennaRef, Edge, SuperNode};

    fn chain(relays: usize, antennas: usize) -> Network {
        let mut ids = vec!["S".to_string()];
        ids.extend((0..relays).map(|i| format!("R{i}")));
        ids.push("D".into());
        let nodes = ids.iter().map(|id| SuperNode::new(id.clone(), antennas)).collect();
        let edges = ids
            .windows(2)
            .map(|w| Edge::new(AntennaRef::new(w[0].clone(), 0), AntennaRef::new(w[1].clone(), 0), None))
            .collect();
        Network::new(nodes, edges, vec!["S".into()], vec!["D".into()]).unwrap()
    }

    #[test]
    fn no_relays_no_matrices() {
        assert!(random_relays_complex(&chain(0, 1), 1).is_empty());
        assert!(random_relays_fp(&chain(0, 1), PrimeField::new(5).unwrap(), 1).is_empty());
    }

    #[test]
    fn shapes_and_determinism() {
        let net = chain(2, 3);
        let a = random_relays_complex(&net, 4);
        assert_eq!(a.len(), 2);
        assert_eq!(a.get("R1").unwrap().shape(), (3, 3));
        assert_eq!(a, random_relays_complex(&net, 4));
        assert_ne!(a, random_relays_complex(&net, 5));
        let f = PrimeField::new(11).unwrap();
        assert_eq!(random_relays_fp(&net, f, 4), random_relays_fp(&net, f, 4));
    }

    #[test]
    fn fp_entries_are_uniform() {
        // Chi-square goodness of fit over F_5 with 10^5 draws. The 1% critical
        // value for 4 degrees of freedom is 13.28.
        let f = PrimeField::new(5).unwrap();
        let net = chain(1, 1);
        let mut counts = [0u64; 5];
        let mut rng = rng::stream(2024, 0);
        for _ in 0..100_000 {
            let r = fp_relays_from(&net, f, &mut rng);
            counts[r.get("R0").unwrap().get(0, 0) as usize] += 1;
        }
        let expected = 100_000.0 / 5.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < 13.28, "chi2 = {chi2}, counts {counts:?}");
    }
}
