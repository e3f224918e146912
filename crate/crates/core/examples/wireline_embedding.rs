//! Orthogonal links become dedicated antennas, so every cut matrix is a
//! scaled partial permutation and DOF equals the min-cut.
//!
//!     cargo run --example wireline_embedding

use netdof::cuts::{cut_matrix, dof, enumerate_cuts, min_cut_value, DEFAULT_REL_TOL};
use netdof::model::{sample_coefficients, Link, Wireline};

fn main() {
    let links = [("S", "A"), ("S", "B"), ("A", "T"), ("B", "T"), ("A", "B")];
    let wire = Wireline {
        nodes: ["S", "A", "B", "T"].map(String::from).to_vec(),
        links: links.iter().map(|(a, b)| Link::new(*a, *b, None)).collect(),
        sources: vec!["S".into()],
        sinks: vec!["T".into()],
    };
    let net = sample_coefficients(&wire.embed().unwrap(), 4);
    for n in net.nodes() {
        println!("{} gets {} antenna(s)", n.id, n.antennas);
    }

    for cut in enumerate_cuts(&net, "S", "T").unwrap() {
        let m = cut_matrix(&net, &cut).unwrap();
        println!("cut {:<10} {} crossing, {} nonzeros", cut.describe(&net), cut.value(), m.nonzeros());
    }
    println!(
        "min-cut {}, dof {}",
        min_cut_value(&net, "S", "T").unwrap(),
        dof(&net, "S", "T", DEFAULT_REL_TOL).unwrap().dof
    );
}
