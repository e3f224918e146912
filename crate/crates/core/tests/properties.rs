//! Invariants over random networks.

use netdof::cuts::{brute_force_min_cut, cut_matrix, dof, enumerate_cuts, min_cut_value, numerical_rank, DEFAULT_REL_TOL};
use netdof::galois::{deterministic_min_cut_rank, lift_network, FpMatrix, PrimeField};
use netdof::model::{embed_wireline, parse_network, to_json, Link, Network, Wireline};
use netdof::random::{random_dag, random_layered, DagParams, LayeredParams};
use netdof::relay::{
    extract_zero_error_code, random_relays_complex, random_relays_fp, unfold_complex, unfold_fp, verify_zero_error,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn dag(seed: u64) -> Network {
    random_dag(&DagParams::default(), seed)
}

fn small_dag(seed: u64) -> Network {
    random_dag(
        &DagParams {
            max_nodes: 6,
            ..DagParams::default()
        },
        seed,
    )
}

fn d(net: &Network) -> usize {
    dof(net, "S", "D", DEFAULT_REL_TOL).unwrap().dof
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let net = dag(seed);
        prop_assert_eq!(parse_network(&to_json(&net, None)).unwrap(), net);
    }

    #[test]
    fn max_flow_matches_brute_force(seed in any::<u64>()) {
        let net = dag(seed);
        prop_assert_eq!(min_cut_value(&net, "S", "D").unwrap(), brute_force_min_cut(&net, "S", "D").unwrap().0);
    }

    #[test]
    fn dof_at_most_min_cut(seed in any::<u64>()) {
        let net = dag(seed);
        prop_assert!(d(&net) <= min_cut_value(&net, "S", "D").unwrap());
    }

    #[test]
    fn dof_ignores_rescaling_one_edge(seed in any::<u64>(), pick in any::<prop::sample::Index>(), re in 0.1f64..10.0, im in -10.0f64..10.0) {
        let net = dag(seed);
        let e = pick.index(net.edge_count());
        let mut c: Vec<Option<Complex64>> = net.edges().iter().map(|x| x.coeff).collect();
        c[e] = c[e].map(|h| h * Complex64::new(re, im));
        let scaled = net.with_coefficients(c).unwrap();
        prop_assert_eq!(d(&net), d(&scaled));
    }

    #[test]
    fn dof_ignores_node_order(seed in any::<u64>(), shuffle in any::<u64>()) {
        let net = dag(seed);
        let mut nodes = net.nodes().to_vec();
        let n = nodes.len();
        for i in (1..n).rev() {
            let j = (shuffle.wrapping_mul(i as u64 + 7) >> 7) as usize % (i + 1);
            nodes.swap(i, j);
        }
        let perm = Network::new(nodes, net.edges().to_vec(), net.sources().to_vec(), net.sinks().to_vec()).unwrap();
        prop_assert_eq!(d(&net), d(&perm));
        prop_assert_eq!(min_cut_value(&net, "S", "D").unwrap(), min_cut_value(&perm, "S", "D").unwrap());
    }

    #[test]
    fn wireline_dof_is_min_cut(seed in any::<u64>()) {
        let net = dag(seed);
        let mut links: Vec<Link> = Vec::new();
        for e in net.edges() {
            if !links.iter().any(|l| l.from == e.from.node && l.to == e.to.node) {
                links.push(Link::new(e.from.node.clone(), e.to.node.clone(), None));
            }
        }
        let wire = Wireline {
            nodes: net.nodes().iter().map(|n| n.id.clone()).collect(),
            links,
            sources: net.sources().to_vec(),
            sinks: net.sinks().to_vec(),
        };
        let w = netdof::model::sample_coefficients(&embed_wireline(&wire).unwrap(), seed);
        for cut in enumerate_cuts(&w, "S", "D").unwrap() {
            let m = cut_matrix(&w, &cut).unwrap().matrix;
            for r in 0..m.nrows() {
                prop_assert!(m.row(r).iter().filter(|x| x.norm() > 0.0).count() <= 1);
            }
            for c in 0..m.ncols() {
                prop_assert!(m.column(c).iter().filter(|x| x.norm() > 0.0).count() <= 1);
            }
        }
        prop_assert_eq!(d(&w), min_cut_value(&w, "S", "D").unwrap());
    }

    #[test]
    fn af_rank_never_beats_dof(seed in any::<u64>(), relay_seed in any::<u64>()) {
        let net = random_layered(&LayeredParams::default(), seed);
        let g = unfold_complex(&net, "S", "D", &random_relays_complex(&net, relay_seed), 1).unwrap();
        prop_assert!(numerical_rank(&g.matrix, DEFAULT_REL_TOL) <= d(&net));
    }

    #[test]
    fn fp_af_rank_never_beats_deterministic_min_cut(seed in any::<u64>(), relay_seed in any::<u64>()) {
        let net = small_dag(seed);
        let (dn, _) = lift_network(&net, seed, 20).unwrap();
        let g = unfold_fp(&dn, "S", "D", &random_relays_fp(dn.network(), dn.field(), relay_seed), 2).unwrap();
        let (det, _) = deterministic_min_cut_rank(&dn, "S", "D").unwrap();
        prop_assert!(g.matrix.rank() <= 2 * det);
    }

    #[test]
    fn unfolding_is_time_invariant(seed in any::<u64>(), slots in 2usize..4) {
        // Memoryless relays on a layered network: T slots give T copies of
        // the one-slot matrix on the block diagonal.
        let net = random_layered(&LayeredParams::default(), seed);
        let relays = random_relays_complex(&net, seed ^ 1);
        let one = unfold_complex(&net, "S", "D", &relays, 1).unwrap().matrix;
        let many = unfold_complex(&net, "S", "D", &relays, slots).unwrap().matrix;
        let (r, c) = one.shape();
        for i in 0..slots {
            for j in 0..slots {
                let block = many.view((i * r, j * c), (r, c));
                if i == j {
                    prop_assert!((block - &one).norm() <= 1e-9 * one.norm().max(1.0));
                } else {
                    prop_assert!(block.norm() == 0.0);
                }
            }
        }
    }

    #[test]
    fn zero_error_code_round_trips(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(0i64..1000, 16)) {
        let f = PrimeField::new(p).unwrap();
        let g = FpMatrix::from_fn(f, rows, cols, |r, c| entries[r * 4 + c] as u64 % p);
        match extract_zero_error_code(&g) {
            Ok(code) => {
                prop_assert_eq!(code.dimension, g.rank());
                prop_assert!(verify_zero_error(&code, &g, 0).ok);
            }
            Err(_) => prop_assert_eq!(g.rank(), 0),
        }
    }
}

#[test]
fn unfolding_is_linear_in_the_input() {
    // Superposition on an F_p network that needs buffering.
    let net = parse_network(
        r#"{"nodes":[{"id":"S","antennas":2},{"id":"R","antennas":2},{"id":"D","antennas":1}],
            "edges":[{"from":"S","from_ant":0,"to":"R","to_ant":0},{"from":"S","from_ant":1,"to":"R","to_ant":1},
                     {"from":"R","from_ant":0,"to":"D","to_ant":0},{"from":"R","from_ant":1,"to":"D","to_ant":0},
                     {"from":"S","from_ant":1,"to":"D","to_ant":0}],
            "sources":["S"],"sinks":["D"]}"#,
    )
    .unwrap();
    let net = netdof::model::sample_coefficients(&net, 8);
    let (dn, _) = lift_network(&net, 8, 20).unwrap();
    let g = unfold_fp(&dn, "S", "D", &random_relays_fp(dn.network(), dn.field(), 3), 3).unwrap().matrix;
    let f = dn.field();
    let x1 = vec![1, 0, 4, 2, 0, 9];
    let x2 = vec![5, 5, 1, 0, 3, 3];
    let sum: Vec<u64> = x1.iter().zip(&x2).map(|(&a, &b)| f.add(f.reduce(a), f.reduce(b))).collect();
    let lhs = g.mul_vec(&sum);
    let rhs: Vec<u64> = g.mul_vec(&x1).iter().zip(g.mul_vec(&x2)).map(|(&a, b)| f.add(a, b)).collect();
    assert_eq!(lhs, rhs);
}
