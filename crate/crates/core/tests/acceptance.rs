//! Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::time::{Duration, Instant};

use netdof::cli;
use netdof::cuts::{analyze_flow, brute_force_min_cut, dof, min_cut_value, multicast_dof, DEFAULT_REL_TOL};
use netdof::galois::{deterministic_min_cut_rank, deterministic_multicast_rank, lift_network, lift_network_with, LiftOptions};
use netdof::model::{parse_network, sample_coefficients, AntennaRef, Edge, Network, SuperNode};
use netdof::outage::{estimate_diversity, simulate_paths, snr_grid, SimConfig};
use netdof::random::{random_dag, random_layered, DagParams, LayeredParams};
use netdof::relay::{
    achievable_dof_af, best_relays_fp, extract_zero_error_code, verify_zero_error, LayerPlan,
};

const TOL: f64 = DEFAULT_REL_TOL;

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let took = t.elapsed();
    if took > limit {
        o.pass = false;
    }
    o.detail = format!("{}; {:.2} s of {} s allowed", o.detail, took.as_secs_f64(), limit.as_secs());
    o
}

fn oracle_equivalence() -> Outcome {
    let mut ok = 0;
    for seed in 0..200 {
        let net = random_dag(&DagParams::default(), seed);
        if min_cut_value(&net, "S", "D").unwrap() == brute_force_min_cut(&net, "S", "D").unwrap().0 {
            ok += 1;
        }
    }
    Outcome {
        pass: ok == 200,
        detail: format!("{ok}/200 max-flow values equal the brute-force cut minimum"),
    }
}

fn dof_sandwich() -> Outcome {
    let mut ok = 0;
    for seed in 0..100 {
        let net = random_dag(&DagParams::default(), 10_000 + seed);
        let d = dof(&net, "S", "D", TOL).unwrap().dof;
        let Ok((dn, cert)) = lift_network(&net, seed, 20) else {
            continue;
        };
        let (det, _) = deterministic_min_cut_rank(&dn, "S", "D").unwrap();
        if cert.is_valid() && det == d {
            ok += 1;
        }
    }
    Outcome {
        pass: ok == 100,
        detail: format!("{ok}/100 lifts certified with deterministic min-cut rank = dof"),
    }
}

fn af_achievability() -> Outcome {
    let (mut equal, mut bounded) = (0, 0);
    for seed in 0..100 {
        let net = random_layered(&LayeredParams::default(), 20_000 + seed);
        let d = dof(&net, "S", "D", TOL).unwrap().dof;
        let hops = LayerPlan::new(&net, "S", "D").unwrap().latency;
        let af = achievable_dof_af(&net, "S", "D", 5, hops, seed, TOL).unwrap();
        equal += (af.dof == d) as usize;
        bounded += (af.dof <= d) as usize;
    }
    Outcome {
        pass: equal >= 99 && bounded == 100,
        detail: format!("AF dof = dof in {equal}/100, AF dof <= dof in {bounded}/100"),
    }
}

fn zero_error_codes() -> Outcome {
    // A small starting prime keeps p^r under the exhaustive sweep limit; the
    // lift still escalates until every cut is certified.
    let opts = LiftOptions {
        prime: Some(17),
        ..LiftOptions::default()
    };
    let (mut ok, mut exhaustive, mut messages) = (0, 0, 0u64);
    for seed in 0..50 {
        let net = random_layered(&LayeredParams::default(), 30_000 + seed);
        let (dn, _) = lift_network_with(&net, seed, &opts).unwrap();
        let (_, g) = best_relays_fp(&dn, "S", "D", 5, 1, seed).unwrap();
        let Ok(code) = extract_zero_error_code(&g.matrix) else {
            continue;
        };
        let check = verify_zero_error(&code, &g.matrix, seed);
        ok += check.ok as usize;
        exhaustive += check.exhaustive as usize;
        messages += check.messages_checked;
    }
    Outcome {
        pass: ok == 50 && exhaustive == 50,
        detail: format!("{ok}/50 codes decode every message, {exhaustive}/50 swept exhaustively, {messages} messages"),
    }
}

fn mimo(nt: usize, nr: usize) -> Network {
    let mut edges = Vec::new();
    for a in 0..nt {
        for b in 0..nr {
            edges.push(Edge::new(AntennaRef::new("S", a), AntennaRef::new("D", b), None));
        }
    }
    let net = Network::new(
        vec![SuperNode::new("S", nt), SuperNode::new("D", nr)],
        edges,
        vec!["S".into()],
        vec!["D".into()],
    )
    .unwrap();
    sample_coefficients(&net, (nt * 10 + nr) as u64)
}

fn closed_forms() -> Outcome {
    let mut ok = 0;
    let mut total = 0;
    let mut bad = Vec::new();
    for nt in 1..=3 {
        for nr in 1..=3 {
            total += 1;
            let a = analyze_flow(&mimo(nt, nr), "S", "D", TOL).unwrap();
            if a.diversity() == nt * nr && a.dof == nt.min(nr) {
                ok += 1;
            } else {
                bad.push(format!("{nt}x{nr}"));
            }
        }
    }
    for (name, text, want) in [
        ("diamond", include_str!("../networks/diamond.json"), (2, 1)),
        ("bottleneck", include_str!("../networks/relay_bottleneck.json"), (2, 1)),
    ] {
        total += 1;
        let net = sample_coefficients(&parse_network(text).unwrap(), 1);
        let a = analyze_flow(&net, "S", "D", TOL).unwrap();
        if (a.diversity(), a.dof) == want {
            ok += 1;
        } else {
            bad.push(name.into());
        }
    }
    Outcome {
        pass: ok == total,
        detail: format!("{ok}/{total} closed forms exact{}", if bad.is_empty() { String::new() } else { format!(", wrong: {bad:?}") }),
    }
}

fn diversity_slopes() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let grid = snr_grid(25.0, 40.0, 2.5).unwrap();
    for m in 1..=3usize {
        let cfg = SimConfig::new(1.0, grid.clone(), 1_000_000, 100 + m as u64);
        let curve = simulate_paths(&vec![1; m], &cfg).unwrap();
        match estimate_diversity(&curve, (25.0, 40.0)) {
            Ok(e) => {
                let inside = (e.slope - m as f64).abs() <= 0.5;
                pass &= inside;
                parts.push(format!("M={m} slope {:.3}", e.slope));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("M={m} {e}"));
            }
        }
    }
    let want = 1.0 - (-1.0f64 / 100.0).exp();
    let cfg = SimConfig::new(1.0, vec![20.0], 1_000_000, 7);
    let p = &simulate_paths(&[1], &cfg).unwrap().points[0];
    let z = (p.p_out - want) / p.stderr;
    pass &= z.abs() <= 3.0;
    parts.push(format!("M=1 at 20 dB {:.5e} vs {want:.5e} ({z:+.2} se)", p.p_out));
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn multicast() -> Outcome {
    let net = sample_coefficients(&parse_network(include_str!("../networks/butterfly.json")).unwrap(), 4);
    let m = multicast_dof(&net, "S", &["D1", "D2"], TOL).unwrap();
    let per: Vec<usize> = m.per_sink.iter().map(|(_, d)| d.dof).collect();
    let (dn, _) = lift_network(&net, 4, 20).unwrap();
    let det = deterministic_multicast_rank(&dn, "S", &["D1", "D2"]).unwrap();
    Outcome {
        pass: m.dof == 2 && per == [2, 2] && det == 2,
        detail: format!("multicast dof {}, per sink {per:?}, deterministic {det}", m.dof),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let net = |n: &str| format!("{}/networks/{n}.json", env!("CARGO_MANIFEST_DIR"));
    let commands: Vec<(Vec<String>, Vec<&str>)> = vec![
        (vec!["analyze".into(), net("butterfly"), "--json-out".into(), "{d}/a.json".into()], vec!["a.json"]),
        (
            vec!["lift".into(), net("diamond"), "--out".into(), "{d}/l.json".into(), "--cert".into(), "{d}/c.csv".into()],
            vec!["l.json", "c.csv"],
        ),
        (
            vec!["simulate".into(), net("diamond"), "--trials".into(), "50000".into(), "--out".into(), "{d}/s.csv".into()],
            vec!["s.csv"],
        ),
        (vec!["verify".into(), net("two_flows"), "--csv".into(), "{d}/v.csv".into()], vec!["v.csv"]),
        (vec!["paths".into(), net("butterfly")], vec![]),
    ];
    let mut same = 0;
    for (args, files) in &commands {
        let mut runs = Vec::new();
        for threads in ["1", "3", "8", "1"] {
            let d = dir.path().display().to_string();
            let mut argv: Vec<String> = vec!["netdof".into(), "--seed".into(), "99".into(), "--threads".into(), threads.into()];
            argv.extend(args.iter().map(|a| a.replace("{d}", &d)));
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = cli::run(&argv, &mut out, &mut err);
            let written: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(dir.path().join(f)).unwrap()).collect();
            runs.push((code, out, err, written));
        }
        if runs.iter().all(|r| r == &runs[0]) && runs[0].0 == 0 {
            same += 1;
        }
    }
    Outcome {
        pass: same == commands.len(),
        detail: format!("{same}/{} commands byte-identical across 4 runs at 1, 3 and 8 threads", commands.len()),
    }
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("oracle equivalence", Duration::from_secs(10), oracle_equivalence),
        ("dof sandwich", Duration::from_secs(60), dof_sandwich),
        ("AF achievability", Duration::from_secs(60), af_achievability),
        ("zero-error codes", Duration::from_secs(30), zero_error_codes),
        ("closed forms", Duration::from_secs(60), closed_forms),
        ("diversity slope", Duration::from_secs(600), diversity_slopes),
        ("multicast", Duration::from_secs(60), multicast),
        ("determinism", Duration::from_secs(600), determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let o = timed(limit, f);
        println!("criterion {} {name}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
