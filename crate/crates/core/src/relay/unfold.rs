//! Time-expanded end-to-end transfer matrices under amplify-and-forward.
//!
//! Every super-node on a route from the source to the sink is placed at its
//! layer, the length of the longest route reaching it from the source. An
//! edge that skips layers is padded with identity buffer relays, which here
//! is a pure delay of `layer(head) - layer(tail)` slots. After padding every
//! route has the same length `L`, so a symbol sent in slot `k` reaches the
//! sink in slot `k + L` and the sink listens for exactly `T` slots.
//!
//! Relays are memoryless: in each slot a relay transmits its fixed matrix
//! times what it received in that slot. Noise is not modelled; the object is
//! the rank of the linear map.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::galois::{DeterministicNetwork, FpMatrix, PrimeField};
use crate::model::Network;

use super::{RelayAssignment, RelayError};

/// Scalar arithmetic the unfolding runs over.
pub(crate) trait Arith: Sync {
    type E: Copy + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
}

pub(crate) struct ComplexArith;

impl Arith for ComplexArith {
    type E = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::default()
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: Complex64, b: Complex64) -> Complex64 {
        a + b
    }
    fn mul(&self, a: Complex64, b: Complex64) -> Complex64 {
        a * b
    }
}

impl Arith for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        PrimeField::add(*self, a, b)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        PrimeField::mul(*self, a, b)
    }
}

/// Shape of an unfolded matrix. Column `slot * source_antennas + a` is
/// source antenna `a` in input slot `slot`; row `k * sink_antennas + b` is
/// sink antenna `b` in the k-th listening slot (absolute slot `latency + k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnfoldLayout {
    pub source_antennas: usize,
    pub sink_antennas: usize,
    pub slots_in: usize,
    pub slots_out: usize,
    pub latency: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndToEndMatrix<M> {
    pub matrix: M,
    pub layout: UnfoldLayout,
}

/// Layering of the part of the network that carries the flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPlan {
    pub source: usize,
    pub sink: usize,
    /// `Some(layer)` for nodes on a source-to-sink route.
    pub layer: Vec<Option<usize>>,
    /// (edge, delay) for edges between routed nodes.
    pub edges: Vec<(usize, usize)>,
    pub latency: usize,
}

impl LayerPlan {
    pub fn new(net: &Network, s: &str, t: &str) -> Result<Self, RelayError> {
        let source = net
            .node_index(s)
            .ok_or_else(|| RelayError::UnknownNode(s.into()))?;
        let sink = net
            .node_index(t)
            .ok_or_else(|| RelayError::UnknownNode(t.into()))?;
        if source == sink {
            return Err(RelayError::UnknownNode(format!("{s} is both source and sink")));
        }
        let fwd = net.reachable_from(source);
        if !fwd[sink] {
            return Err(RelayError::NoRoute {
                from: s.into(),
                to: t.into(),
            });
        }
        let back = net.reaching(sink);
        let keep: Vec<bool> = fwd.iter().zip(&back).map(|(a, b)| *a && *b).collect();
        let order = net.topological_order(&keep).ok_or(RelayError::Cyclic)?;

        let ends = net.all_endpoints();
        let inc = net.in_edges();
        let mut layer: Vec<Option<usize>> = vec![None; net.node_count()];
        for &v in &order {
            let l = inc[v]
                .iter()
                .filter(|&&e| keep[ends[e].tail])
                .filter_map(|&e| layer[ends[e].tail])
                .map(|l| l + 1)
                .max()
                .unwrap_or(0);
            layer[v] = Some(l);
        }
        let edges = (0..net.edge_count())
            .filter(|&e| keep[ends[e].tail] && keep[ends[e].head])
            .map(|e| {
                let d = layer[ends[e].head].unwrap() - layer[ends[e].tail].unwrap();
                (e, d)
            })
            .collect();
        Ok(Self {
            source,
            sink,
            latency: layer[sink].unwrap(),
            layer,
            edges,
        })
    }

    /// True when no edge needs padding.
    pub fn is_layered(&self) -> bool {
        self.edges.iter().all(|&(_, d)| d == 1)
    }
}

/// Core simulation. `coeff[e]` is the edge scalar and `relay[v]` the
/// row-major matrix of relay `v`.
pub(crate) fn unfold_generic<A: Arith>(
    arith: &A,
    net: &Network,
    plan: &LayerPlan,
    coeff: &[A::E],
    relay: &[Option<Vec<A::E>>],
    slots: usize,
) -> (Vec<A::E>, UnfoldLayout) {
    let ends = net.all_endpoints();
    let n_s = net.antennas(plan.source);
    let n_t = net.antennas(plan.sink);
    let horizon = slots + plan.latency;
    let rows = n_t * slots;
    let cols = n_s * slots;
    let mut out = vec![arith.zero(); rows * cols];

    let offsets: Vec<usize> = (0..net.node_count()).map(|v| net.antenna_index(v, 0)).collect();
    let total = net.total_antennas();
    let routed: Vec<usize> = (0..net.node_count()).filter(|&v| plan.layer[v].is_some()).collect();

    for col in 0..cols {
        let (in_slot, in_ant) = (col / n_s, col % n_s);
        // tx[k][global antenna]
        let mut tx = vec![vec![arith.zero(); total]; horizon + 1];
        let mut rx = vec![arith.zero(); total];
        for k in 0..=horizon {
            rx.iter_mut().for_each(|x| *x = arith.zero());
            for &(e, d) in &plan.edges {
                if k < d {
                    continue;
                }
                let ep = ends[e];
                let src = tx[k - d][offsets[ep.tail] + ep.tail_antenna];
                let dst = offsets[ep.head] + ep.head_antenna;
                rx[dst] = arith.add(rx[dst], arith.mul(coeff[e], src));
            }
            if k == in_slot {
                tx[k][offsets[plan.source] + in_ant] = arith.one();
            }
            for &v in &routed {
                if v == plan.source || v == plan.sink {
                    continue;
                }
                let a = relay[v].as_ref().expect("relay matrix checked by caller");
                let n = net.antennas(v);
                for i in 0..n {
                    let mut acc = arith.zero();
                    for j in 0..n {
                        acc = arith.add(acc, arith.mul(a[i * n + j], rx[offsets[v] + j]));
                    }
                    tx[k][offsets[v] + i] = acc;
                }
            }
            if k >= plan.latency && k < plan.latency + slots {
                let out_slot = k - plan.latency;
                for b in 0..n_t {
                    out[(out_slot * n_t + b) * cols + col] = rx[offsets[plan.sink] + b];
                }
            }
        }
    }
    let layout = UnfoldLayout {
        source_antennas: n_s,
        sink_antennas: n_t,
        slots_in: slots,
        slots_out: slots,
        latency: plan.latency,
    };
    (out, layout)
}

fn check_relays<M>(
    net: &Network,
    plan: &LayerPlan,
    relays: &RelayAssignment<M>,
    dims: impl Fn(&M) -> (usize, usize),
) -> Result<(), RelayError> {
    for v in 0..net.node_count() {
        if plan.layer[v].is_none() || v == plan.source || v == plan.sink {
            continue;
        }
        let id = net.node_id(v);
        let m = relays.get(id).ok_or_else(|| RelayError::MissingRelay(id.into()))?;
        let n = net.antennas(v);
        if dims(m) != (n, n) {
            return Err(RelayError::RelayShape {
                node: id.into(),
                expected: n,
                found: dims(m),
            });
        }
    }
    Ok(())
}

/// Unfold a Gaussian network over `slots` input slots.
pub fn unfold_complex(
    net: &Network,
    s: &str,
    t: &str,
    relays: &RelayAssignment<DMatrix<Complex64>>,
    slots: usize,
) -> Result<EndToEndMatrix<DMatrix<Complex64>>, RelayError> {
    if slots == 0 {
        return Err(RelayError::NoSlots);
    }
    let plan = LayerPlan::new(net, s, t)?;
    check_relays(net, &plan, relays, |m| m.shape())?;
    let coeff = net
        .coefficients()
        .map_err(|edge| RelayError::MissingCoefficient { edge })?;
    let relay: Vec<Option<Vec<Complex64>>> = net
        .nodes()
        .iter()
        .map(|n| {
            relays
                .get(&n.id)
                .map(|m| (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)])).collect())
        })
        .collect();
    let (data, layout) = unfold_generic(&ComplexArith, net, &plan, &coeff, &relay, slots);
    let rows = layout.sink_antennas * layout.slots_out;
    let cols = layout.source_antennas * layout.slots_in;
    Ok(EndToEndMatrix {
        matrix: DMatrix::from_row_slice(rows, cols, &data),
        layout,
    })
}

/// Unfold a deterministic network over `slots` input slots, exactly.
pub fn unfold_fp(
    dn: &DeterministicNetwork,
    s: &str,
    t: &str,
    relays: &RelayAssignment<FpMatrix>,
    slots: usize,
) -> Result<EndToEndMatrix<FpMatrix>, RelayError> {
    if slots == 0 {
        return Err(RelayError::NoSlots);
    }
    let net = dn.network();
    let field = dn.field();
    let plan = LayerPlan::new(net, s, t)?;
    check_relays(net, &plan, relays, |m| (m.rows(), m.cols()))?;
    if let Some((id, _)) = relays.iter().find(|(_, m)| m.field() != field) {
        return Err(RelayError::FieldMismatch(id.to_string()));
    }
    let relay: Vec<Option<Vec<u64>>> = net
        .nodes()
        .iter()
        .map(|n| {
            relays
                .get(&n.id)
                .map(|m| (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect())
        })
        .collect();
    let (data, layout) = unfold_generic(&field, net, &plan, dn.xi(), &relay, slots);
    let cols = layout.source_antennas * layout.slots_in;
    let rows = layout.sink_antennas * layout.slots_out;
    Ok(EndToEndMatrix {
        matrix: FpMatrix::from_fn(field, rows, cols, |i, j| data[i * cols + j]),
        layout,
    })
}
