//! Outage curves of parallel Rayleigh links and relay paths, with the fitted
//! diversity slope.
//!
//!     cargo run --release --example outage_slope

use netdof::model::parse_network;
use netdof::outage::{estimate_diversity, simulate_outage, simulate_paths, snr_grid, SimConfig};

fn main() {
    let grid = snr_grid(25.0, 40.0, 2.5).unwrap();
    let cfg = SimConfig::new(1.0, grid.clone(), 200_000, 1);

    for m in 1..=3 {
        let curve = simulate_paths(&vec![1; m], &cfg).unwrap();
        let e = estimate_diversity(&curve, (25.0, 40.0)).unwrap();
        println!("{m} parallel link(s): slope {:.3}", e.slope);
    }

    let net = parse_network(include_str!("../networks/diamond.json")).unwrap();
    let curve = simulate_outage(&net, "S", "D", &cfg).unwrap();
    let e = estimate_diversity(&curve, (25.0, 40.0)).unwrap();
    println!("diamond (two 2-hop AF paths): slope {:.3}\n", e.slope);
    print!("{}", curve.to_csv(Some(&e)));
}
