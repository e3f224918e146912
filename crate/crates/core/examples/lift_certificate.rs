//! Lift a Gaussian network to a prime field and print the per-cut certificate.
//!
//!     cargo run --example lift_certificate

use netdof::cuts::{dof, DEFAULT_REL_TOL};
use netdof::galois::{deterministic_min_cut_rank, lift_network};
use netdof::model::{parse_network, sample_coefficients};

fn main() {
    let net = sample_coefficients(&parse_network(include_str!("../networks/diamond.json")).unwrap(), 3);
    let (dn, cert) = lift_network(&net, 7, 20).unwrap();
    println!("p = {}, q = {}, xi = {:?}", dn.p(), dn.q(), dn.xi());
    println!("attempts {}, primes {:?}", cert.attempts, cert.primes_tried);
    print!("{}", cert.to_csv());

    let (det, _) = deterministic_min_cut_rank(&dn, "S", "D").unwrap();
    let d = dof(&net, "S", "D", DEFAULT_REL_TOL).unwrap().dof;
    println!("Gaussian dof {d}, deterministic min-cut rank {det}");
}
