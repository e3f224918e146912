//! The butterfly as a wireless network: each sink alone and both together
//! get two degrees of freedom.
//!
//!     cargo run --example multicast_butterfly

use netdof::cuts::{multicast_dof, DEFAULT_REL_TOL};
use netdof::galois::{deterministic_multicast_rank, lift_network};
use netdof::model::{parse_network, sample_coefficients};

fn main() {
    let net = parse_network(include_str!("../networks/butterfly.json")).unwrap();
    let net = sample_coefficients(&net, 2);
    let m = multicast_dof(&net, "S", &["D1", "D2"], DEFAULT_REL_TOL).unwrap();
    for (sink, d) in &m.per_sink {
        println!("S -> {sink}: dof {} at cut {}", d.dof, d.argmin.describe(&net));
    }
    println!("multicast dof {}", m.dof);

    let (dn, cert) = lift_network(&net, 2, 20).unwrap();
    println!(
        "lift over F_{} certified on {} cuts; deterministic multicast rank {}",
        dn.p(),
        cert.rows.len(),
        deterministic_multicast_rank(&dn, "S", &["D1", "D2"]).unwrap()
    );
}
