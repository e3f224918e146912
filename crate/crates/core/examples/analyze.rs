//! Diversity and DOF of a few textbook networks.
//!
//!     cargo run --example analyze

use netdof::cuts::{analyze_flow, DEFAULT_REL_TOL};
use netdof::model::{parse_network, sample_coefficients};

const NETWORKS: &[(&str, &str)] = &[
    ("single edge", include_str!("../networks/single_edge.json")),
    ("diamond", include_str!("../networks/diamond.json")),
    ("2x2 MIMO", include_str!("../networks/mimo2x2.json")),
    ("relay bottleneck", include_str!("../networks/relay_bottleneck.json")),
];

fn main() {
    for (name, text) in NETWORKS {
        let net = sample_coefficients(&parse_network(text).unwrap(), 1);
        let a = analyze_flow(&net, "S", "D", DEFAULT_REL_TOL).unwrap();
        println!(
            "{name:>16}: diversity {}  dof {}  (rank-limiting cut {})",
            a.diversity(),
            a.dof,
            a.argmin_cut_dof.describe(&net)
        );
    }
}
