//! Lifting a Gaussian network to a linear deterministic network over a prime
//! field whose cut ranks dominate the Gaussian ones.
//!
//! Each edge gets an independent uniform nonzero residue. The assignment is
//! accepted when, for every cut, the field rank of `G_omega` is at least the
//! numerical rank of `H_omega`. By Schwartz-Zippel, with
//! `p > 2 * N * |Omega|` a single draw fails with probability at most 1/2,
//! so a handful of attempts suffices; after `max_attempts` failures the
//! bound is doubled and a larger prime is used.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;

use crate::cuts::{self, cut_matrix, enumerate_cuts, min_over_cuts, numerical_rank, Cut, CutError, CutLayout};
use crate::model::{to_json, Document, LiftFields, Network};
use crate::rng;

use super::{choose_prime_above, FpMatrix, GaloisError, PrimeField, MAX_PRIME};

/// A network over `F_p`: same topology as the source network, vector length
/// `q`, and one nonzero field coefficient per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct DeterministicNetwork {
    network: Network,
    field: PrimeField,
    q: usize,
    xi: Vec<u64>,
}

impl DeterministicNetwork {
    pub fn new(network: Network, p: u64, q: usize, xi: Vec<u64>) -> Result<Self, GaloisError> {
        let field = PrimeField::new(p)?;
        if xi.len() != network.edge_count() {
            return Err(GaloisError::InvalidLift(format!(
                "{} coefficients for {} edges",
                xi.len(),
                network.edge_count()
            )));
        }
        if let Some(i) = xi.iter().position(|&x| x == 0 || x >= p) {
            return Err(GaloisError::InvalidLift(format!(
                "edge {i}: xi = {} is not a nonzero residue mod {p}",
                xi[i]
            )));
        }
        if q < network.max_antennas() {
            return Err(GaloisError::InvalidLift(format!(
                "q = {q} is below the largest antenna count {}",
                network.max_antennas()
            )));
        }
        Ok(Self {
            network,
            field,
            q,
            xi,
        })
    }

    /// Build from a parsed lifted-network file.
    pub fn from_document(doc: &Document) -> Result<Self, GaloisError> {
        let lift = doc
            .lift
            .as_ref()
            .ok_or_else(|| GaloisError::InvalidLift("file has no `p`, `q`, `xi` fields".into()))?;
        Self::new(doc.network.clone(), lift.p, lift.q, lift.xi.clone())
    }

    pub fn network(&self) -> &Network {
        &self.network
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn xi(&self) -> &[u64] {
        &self.xi
    }

    pub fn lift_fields(&self) -> LiftFields {
        LiftFields {
            p: self.p(),
            q: self.q,
            xi: self.xi.clone(),
        }
    }

    /// Lifted-network file: the network grammar plus `p`, `q` and `xi`.
    pub fn to_json(&self) -> String {
        to_json(&self.network, Some(&self.lift_fields()))
    }

    /// `G_omega`, laid out exactly like the complex cut matrix.
    pub fn cut_matrix(&self, cut: &Cut) -> FpMatrix {
        let layout = CutLayout::new(&self.network, cut);
        let mut m = FpMatrix::zeros(self.field, layout.rows.len(), layout.cols.len());
        for &(r, c, e) in &layout.entries {
            m.set(r, c, self.xi[e]);
        }
        m
    }
}

/// One cut of the certificate table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertRow {
    pub cut_mask: u64,
    pub m_omega: usize,
    pub rank_h: usize,
    pub rank_g: usize,
}

impl CertRow {
    pub fn holds(&self) -> bool {
        self.rank_g >= self.rank_h
    }
}

/// Per-cut evidence that a lift dominates the Gaussian network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    pub rows: Vec<CertRow>,
    pub attempts: usize,
    pub primes_tried: Vec<u64>,
}

impl LiftCertificate {
    pub fn is_valid(&self) -> bool {
        self.rows.iter().all(CertRow::holds)
    }

    /// Rows where the field rank falls short.
    pub fn violations(&self) -> impl Iterator<Item = &CertRow> {
        self.rows.iter().filter(|r| !r.holds())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("cut_bitmask,m_omega,rank_H,rank_G\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{}", r.cut_mask, r.m_omega, r.rank_h, r.rank_g);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftOptions {
    pub rel_tol: f64,
    pub max_attempts: usize,
    /// Start from this prime instead of the Schwartz-Zippel bound.
    pub prime: Option<u64>,
}

impl Default for LiftOptions {
    fn default() -> Self {
        Self {
            rel_tol: cuts::DEFAULT_REL_TOL,
            max_attempts: 20,
            prime: None,
        }
    }
}

/// Every distinct cut over all declared flows, by source-side mask.
pub fn flow_cut_masks(net: &Network) -> Result<Vec<u64>, GaloisError> {
    let flows = net.flows();
    if flows.is_empty() {
        return Err(GaloisError::NoFlow);
    }
    let mut masks = BTreeSet::new();
    for (s, t) in &flows {
        masks.extend(enumerate_cuts(net, s, t)?.map(|c| c.source_side()));
    }
    Ok(masks.into_iter().collect())
}

fn gaussian_rows(net: &Network, masks: &[u64], rel_tol: f64) -> Result<Vec<(Cut, usize)>, CutError> {
    use rayon::prelude::*;
    masks
        .par_iter()
        .map(|&m| {
            let cut = Cut::from_mask(net, m);
            let rank = numerical_rank(&cut_matrix(net, &cut)?.matrix, rel_tol);
            Ok((cut, rank))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn table(dn: &DeterministicNetwork, gaussian: &[(Cut, usize)]) -> Vec<CertRow> {
    use rayon::prelude::*;
    gaussian
        .par_iter()
        .map(|(cut, rank_h)| CertRow {
            cut_mask: cut.source_side(),
            m_omega: cut.value(),
            rank_h: *rank_h,
            rank_g: dn.cut_matrix(cut).rank(),
        })
        .collect()
}

/// Lift with default tolerance, escalating primes as needed.
pub fn lift_network(
    net: &Network,
    seed: u64,
    max_attempts: usize,
) -> Result<(DeterministicNetwork, LiftCertificate), GaloisError> {
    lift_network_with(
        net,
        seed,
        &LiftOptions {
            max_attempts,
            ..LiftOptions::default()
        },
    )
}

pub fn lift_network_with(
    net: &Network,
    seed: u64,
    opts: &LiftOptions,
) -> Result<(DeterministicNetwork, LiftCertificate), GaloisError> {
    if let Some(e) = net.edges().iter().position(|e| e.coeff.is_none()) {
        return Err(CutError::MissingCoefficient { edge: e }.into());
    }
    let masks = flow_cut_masks(net)?;
    let gaussian = gaussian_rows(net, &masks, opts.rel_tol)?;
    let n_edges = net.edge_count().max(1) as u64;
    let q = net.max_antennas();

    let (mut p, mut bound) = match opts.prime {
        Some(p) => {
            PrimeField::new(p)?;
            (p, p)
        }
        None => {
            let bound = 2 * n_edges * masks.len() as u64;
            (choose_prime_above(bound)?, bound)
        }
    };
    let mut attempts = 0;
    let mut primes_tried = Vec::new();
    loop {
        primes_tried.push(p);
        for _ in 0..opts.max_attempts.max(1) {
            let mut rng = rng::stream(seed, attempts as u64);
            attempts += 1;
            let xi = (0..net.edge_count()).map(|_| rng.random_range(1..p)).collect();
            let dn = DeterministicNetwork::new(net.clone(), p, q, xi)?;
            let rows = table(&dn, &gaussian);
            if rows.iter().all(CertRow::holds) {
                let cert = LiftCertificate {
                    rows,
                    attempts,
                    primes_tried,
                };
                return Ok((dn, cert));
            }
        }
        bound *= 2;
        match choose_prime_above(bound) {
            Ok(next) if next <= MAX_PRIME => p = next,
            _ => {
                return Err(GaloisError::AttemptsExhausted {
                    attempts,
                    primes: primes_tried,
                })
            }
        }
    }
}

/// Recompute the certificate table for an existing lift.
pub fn certify(net: &Network, dn: &DeterministicNetwork, rel_tol: f64) -> Result<LiftCertificate, GaloisError> {
    if dn.network().all_endpoints() != net.all_endpoints() || dn.network().node_count() != net.node_count() {
        return Err(GaloisError::InvalidLift("lift topology differs from the network".into()));
    }
    let masks = flow_cut_masks(net)?;
    let gaussian = gaussian_rows(net, &masks, rel_tol)?;
    Ok(LiftCertificate {
        rows: table(dn, &gaussian),
        attempts: 0,
        primes_tried: vec![dn.p()],
    })
}

/// Capacity of the deterministic flow: the smallest field rank over all cuts.
pub fn deterministic_min_cut_rank(dn: &DeterministicNetwork, s: &str, t: &str) -> Result<(usize, Cut), GaloisError> {
    let cuts = enumerate_cuts(dn.network(), s, t)?;
    Ok(min_over_cuts(&cuts, |c| Ok::<_, CutError>(dn.cut_matrix(c).rank()))?)
}

/// Multicast capacity: the smallest per-sink min-cut rank.
pub fn deterministic_multicast_rank<S: AsRef<str>>(
    dn: &DeterministicNetwork,
    s: &str,
    sinks: &[S],
) -> Result<usize, GaloisError> {
    if sinks.is_empty() {
        return Err(CutError::NoSinks.into());
    }
    sinks
        .iter()
        .map(|t| deterministic_min_cut_rank(dn, s, t.as_ref()).map(|(r, _)| r))
        .try_fold(usize::MAX, |acc, r| r.map(|r| acc.min(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::dof;
    use crate::model::{sample_coefficients, AntennaRef, Edge, SuperNode};
    use num_complex::Complex64;

    fn single_edge() -> Network {
        Network::new(
            vec![SuperNode::new("S", 1), SuperNode::new("D", 1)],
            vec![Edge::new(AntennaRef::new("S", 0), AntennaRef::new("D", 0), Some(Complex64::new(0.3, 0.1)))],
            vec!["S".into()],
            vec!["D".into()],
        )
        .unwrap()
    }

    fn diamond(seed: u64) -> Network {
        let e = |a: &str, b: &str| Edge::new(AntennaRef::new(a, 0), AntennaRef::new(b, 0), None);
        let n = Network::new(
            ["S", "R1", "R2", "D"].iter().map(|id| SuperNode::new(*id, 1)).collect(),
            vec![e("S", "R1"), e("S", "R2"), e("R1", "D"), e("R2", "D")],
            vec!["S".into()],
            vec!["D".into()],
        )
        .unwrap();
        sample_coefficients(&n, seed)
    }

    #[test]
    fn single_edge_lifts_first_try() {
        let (dn, cert) = lift_network(&single_edge(), 1, 20).unwrap();
        assert_eq!(dn.p(), 3);
        assert!(dn.xi()[0] == 1 || dn.xi()[0] == 2);
        assert_eq!(cert.attempts, 1);
        assert_eq!(cert.rows.len(), 1);
        assert!(cert.is_valid());
        assert_eq!(deterministic_min_cut_rank(&dn, "S", "D").unwrap().0, 1);
    }

    #[test]
    fn diamond_certificate_dominates_gaussian_ranks() {
        let net = diamond(5);
        let (dn, cert) = lift_network(&net, 7, 20).unwrap();
        assert_eq!(dn.p(), 37);
        let ranks_h: Vec<usize> = cert.rows.iter().map(|r| r.rank_h).collect();
        assert_eq!(ranks_h, vec![1, 2, 2, 1]);
        assert!(cert.rows.iter().all(|r| r.rank_g >= r.rank_h));
        let (rank, _) = deterministic_min_cut_rank(&dn, "S", "D").unwrap();
        assert_eq!(rank, dof(&net, "S", "D", 1e-9).unwrap().dof);
        assert_eq!(rank, 1);
    }

    #[test]
    fn lifting_is_deterministic() {
        let net = diamond(2);
        let a = lift_network(&net, 99, 20).unwrap();
        let b = lift_network(&net, 99, 20).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.0.to_json(), b.0.to_json());
        assert_eq!(a.1.to_csv(), b.1.to_csv());
    }

    #[test]
    fn escalates_when_the_prime_is_too_small() {
        // Over F_2 every xi is 1, and the full-rank 2x2 MIMO cut becomes the
        // all-ones matrix of rank 1; the lift must move to a larger prime.
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
        let net = sample_coefficients(&net, 4);
        let opts = LiftOptions {
            prime: Some(2),
            max_attempts: 3,
            ..LiftOptions::default()
        };
        let (dn, cert) = lift_network_with(&net, 0, &opts).unwrap();
        assert!(cert.primes_tried.len() > 1);
        assert_eq!(cert.primes_tried[0], 2);
        assert!(cert.attempts > 3);
        assert!(dn.p() > 2);
        assert!(cert.is_valid());
    }

    #[test]
    fn certify_flags_a_bad_lift() {
        let mut edges = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                edges.push(Edge::new(AntennaRef::new("S", a), AntennaRef::new("D", b), None));
            }
        }
        let net = sample_coefficients(
            &Network::new(
                vec![SuperNode::new("S", 2), SuperNode::new("D", 2)],
                edges,
                vec!["S".into()],
                vec!["D".into()],
            )
            .unwrap(),
            1,
        );
        let bad = DeterministicNetwork::new(net.clone(), 5, 2, vec![1, 1, 1, 1]).unwrap();
        let cert = certify(&net, &bad, 1e-9).unwrap();
        assert!(!cert.is_valid());
        assert_eq!(cert.violations().count(), 1);
    }

    #[test]
    fn csv_layout() {
        let (_, cert) = lift_network(&single_edge(), 1, 20).unwrap();
        assert_eq!(cert.to_csv(), "cut_bitmask,m_omega,rank_H,rank_G\n1,1,1,1\n");
    }

    #[test]
    fn rejects_invalid_coefficients() {
        let net = single_edge();
        assert!(DeterministicNetwork::new(net.clone(), 5, 1, vec![0]).is_err());
        assert!(DeterministicNetwork::new(net.clone(), 5, 1, vec![5]).is_err());
        assert!(DeterministicNetwork::new(net.clone(), 4, 1, vec![1]).is_err());
        assert!(DeterministicNetwork::new(net, 5, 0, vec![1]).is_err());
    }
}
