//! Max-flow paths and the schedule that activates them one edge at a time.
//!
//!     cargo run --example edge_disjoint_paths

use netdof::cuts::{edge_disjoint_paths, min_cut};
use netdof::model::parse_network;
use netdof::outage::build_schedule;

fn main() {
    let net = parse_network(include_str!("../networks/diamond.json")).unwrap();
    let cut = min_cut(&net, "S", "D").unwrap();
    println!("min cut {} crosses {} edges", cut.describe(&net), cut.value());

    for (i, path) in edge_disjoint_paths(&net, "S", "D").unwrap().iter().enumerate() {
        let hops: Vec<String> = path
            .iter()
            .map(|&e| format!("{}->{}", net.edges()[e].from, net.edges()[e].to))
            .collect();
        println!("path {i}: {}", hops.join("  "));
    }

    let sched = build_schedule(&net, "S", "D").unwrap();
    println!("{} slots, edge order {:?}", sched.total_slots(), sched.order);
}
