use rayon::prelude::*;

use crate::cuts::numerical_rank;
use crate::galois::DeterministicNetwork;
use crate::model::Network;
use crate::rng;

use super::{complex_relays_from, fp_relays_from, unfold_complex, unfold_fp, EndToEndMatrix, RelayAssignment, RelayError};
use crate::galois::FpMatrix;

/// Ranks reached by random relay draws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfOutcome {
    /// Best per-slot rank, `max_k floor(rank_k / slots)`.
    pub dof: usize,
    /// Raw end-to-end rank of each trial.
    pub ranks: Vec<usize>,
    pub slots: usize,
}

/// DOF reached by amplify-and-forward with random complex relay matrices.
///
/// Trial `k` draws its relays from substream `k` of `seed`, so results are
/// identical however the trials are spread over threads.
pub fn achievable_dof_af(
    net: &Network,
    s: &str,
    t: &str,
    trials: usize,
    slots: usize,
    seed: u64,
    rel_tol: f64,
) -> Result<AfOutcome, RelayError> {
    let ranks = (0..trials.max(1))
        .into_par_iter()
        .map(|k| {
            let relays = complex_relays_from(net, &mut rng::stream(seed, k as u64));
            unfold_complex(net, s, t, &relays, slots).map(|g| numerical_rank(&g.matrix, rel_tol))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(outcome(ranks, slots))
}

/// Same experiment over a deterministic network with exact ranks.
pub fn achievable_rank_fp(
    dn: &DeterministicNetwork,
    s: &str,
    t: &str,
    trials: usize,
    slots: usize,
    seed: u64,
) -> Result<AfOutcome, RelayError> {
    let ranks = (0..trials.max(1))
        .into_par_iter()
        .map(|k| {
            let relays = fp_relays_from(dn.network(), dn.field(), &mut rng::stream(seed, k as u64));
            unfold_fp(dn, s, t, &relays, slots).map(|g| g.matrix.rank())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(outcome(ranks, slots))
}

/// Of `trials` random relay draws over `F_p`, the first with the largest
/// end-to-end rank. Draw `k` is the same one [`achievable_rank_fp`] makes.
pub fn best_relays_fp(
    dn: &DeterministicNetwork,
    s: &str,
    t: &str,
    trials: usize,
    slots: usize,
    seed: u64,
) -> Result<(RelayAssignment<FpMatrix>, EndToEndMatrix<FpMatrix>), RelayError> {
    let mut best: Option<(usize, RelayAssignment<FpMatrix>, EndToEndMatrix<FpMatrix>)> = None;
    for k in 0..trials.max(1) {
        let relays = fp_relays_from(dn.network(), dn.field(), &mut rng::stream(seed, k as u64));
        let g = unfold_fp(dn, s, t, &relays, slots)?;
        let r = g.matrix.rank();
        if best.as_ref().is_none_or(|(b, _, _)| r > *b) {
            best = Some((r, relays, g));
        }
    }
    let (_, relays, g) = best.expect("at least one trial");
    Ok((relays, g))
}

fn outcome(ranks: Vec<usize>, slots: usize) -> AfOutcome {
    let dof = ranks.iter().map(|r| r / slots.max(1)).max().unwrap_or(0);
    AfOutcome { dof, ranks, slots }
}
