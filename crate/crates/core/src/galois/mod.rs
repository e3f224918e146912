//! Exact linear algebra over prime fields and the lift of a Gaussian network
//! to an equivalent linear deterministic network.

mod field;
mod lift;
mod matrix;

pub use field::{is_prime, next_prime_above, PrimeField, MAX_PRIME};
pub use lift::{
    certify, deterministic_min_cut_rank, deterministic_multicast_rank, flow_cut_masks, lift_network,
    lift_network_with, CertRow, DeterministicNetwork, LiftCertificate, LiftOptions,
};
pub use matrix::{fp_det, fp_rank, Echelon, FpMatrix};

use thiserror::Error;

use crate::cuts::CutError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds 2^31 - 1")]
    PrimeTooLarge(u64),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("no certified lift after {attempts} attempts over primes {primes:?}")]
    AttemptsExhausted { attempts: usize, primes: Vec<u64> },
    #[error("network declares no (source, sink) flow")]
    NoFlow,
    #[error("invalid lift: {0}")]
    InvalidLift(String),
    #[error(transparent)]
    Cut(#[from] CutError),
}

/// Smallest prime strictly greater than `2 * n_edges * num_cuts`.
///
/// The product of all cut determinants has total degree at most
/// `n_edges * num_cuts`, so a uniformly random assignment from a field this
/// large leaves it nonzero with probability at least 1/2.
pub fn choose_prime(n_edges: usize, num_cuts: usize) -> Result<u64, GaloisError> {
    assert!(n_edges >= 1 && num_cuts >= 1, "need at least one edge and one cut");
    choose_prime_above(2 * n_edges as u64 * num_cuts as u64)
}

pub(crate) fn choose_prime_above(bound: u64) -> Result<u64, GaloisError> {
    if bound >= MAX_PRIME {
        return Err(GaloisError::PrimeTooLarge(bound));
    }
    Ok(next_prime_above(bound))
}
