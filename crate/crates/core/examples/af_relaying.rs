//! Amplify-and-forward with random relay matrices reaches the min-cut rank.
//!
//!     cargo run --example af_relaying

use netdof::cuts::{dof, numerical_rank, DEFAULT_REL_TOL};
use netdof::random::{random_layered, LayeredParams};
use netdof::relay::{achievable_dof_af, random_relays_complex, unfold_complex, LayerPlan};

fn main() {
    for seed in 0..8 {
        let net = random_layered(&LayeredParams::default(), seed);
        let hops = LayerPlan::new(&net, "S", "D").unwrap().latency;
        let d = dof(&net, "S", "D", DEFAULT_REL_TOL).unwrap().dof;
        let af = achievable_dof_af(&net, "S", "D", 5, hops, seed, DEFAULT_REL_TOL).unwrap();
        println!(
            "seed {seed}: {} nodes, {hops} hops, dof {d}, AF dof {} (raw ranks {:?})",
            net.node_count(),
            af.dof,
            af.ranks
        );
    }

    // One end-to-end matrix in full.
    let net = random_layered(&LayeredParams::default(), 3);
    let relays = random_relays_complex(&net, 1);
    let g = unfold_complex(&net, "S", "D", &relays, 1).unwrap();
    println!(
        "\nseed 3, T = 1: {}x{} matrix of rank {}",
        g.matrix.nrows(),
        g.matrix.ncols(),
        numerical_rank(&g.matrix, DEFAULT_REL_TOL)
    );
}
