use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::cuts::{analyze_flow, brute_force_min_cut, edge_disjoint_paths, max_diversity, multicast_dof, Cut, FlowAnalysis};
use crate::galois::{
    certify, deterministic_min_cut_rank, deterministic_multicast_rank, lift_network_with, DeterministicNetwork,
    LiftCertificate, LiftOptions,
};
use crate::model::{parse_document, Network};
use crate::outage::{
    build_schedule, estimate_diversity, estimate_diversity_auto, simulate_outage, snr_grid, SimConfig,
};
use crate::relay::{
    achievable_dof_af, best_relays_fp, extract_zero_error_code, verify_zero_error, LayerPlan,
};

use super::{load, Cli, Command, Failure, LiftArgs, SimArgs, EXIT_CHECK_FAILED, EXIT_OK};

pub(super) fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = &cli.global;
    if !(g.tol > 0.0 && g.tol < 1.0) {
        return Err(Failure::usage("--tol must lie in (0, 1)"));
    }
    match &cli.command {
        Command::Analyze { network, json_out } => analyze(cli, network, json_out.as_deref(), out),
        Command::Lift {
            network,
            lift,
            out: lifted,
            cert,
        } => lift_cmd(cli, network, lift, lifted.as_deref(), cert.as_deref(), out),
        Command::Simulate { network, sim, out: csv } => simulate(cli, network, sim, csv.as_deref(), out),
        Command::Verify {
            network,
            lift,
            lift_args,
            slots,
            af_trials,
            csv,
        } => verify(cli, network, lift.as_deref(), lift_args, *slots, *af_trials, csv.as_deref(), out),
        Command::Paths { network } => paths(cli, network, out),
    }
}

fn header(cli: &Cli, name: &str) -> String {
    format!("# netdof {name} seed={} tol={:e}\n", cli.global.seed, cli.global.tol)
}

/// Sources that feed two or more sinks, with those sinks.
fn multicast_groups(net: &Network) -> BTreeMap<String, Vec<String>> {
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (s, t) in net.flows() {
        groups.entry(s).or_default().push(t);
    }
    groups.retain(|_, sinks| sinks.len() >= 2);
    groups
}

#[derive(Serialize)]
struct CutJson {
    mask: u64,
    nodes: String,
    value: usize,
}

impl CutJson {
    fn new(net: &Network, c: &Cut) -> Self {
        Self {
            mask: c.source_side(),
            nodes: c.describe(net),
            value: c.value(),
        }
    }
}

#[derive(Serialize)]
struct FlowJson {
    source: String,
    sink: String,
    min_cut: usize,
    diversity: usize,
    dof: usize,
    argmin_cut_diversity: CutJson,
    argmin_cut_dof: CutJson,
}

#[derive(Serialize)]
struct MulticastJson {
    source: String,
    sinks: Vec<String>,
    dof: usize,
    per_sink: BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct AnalysisJson {
    seed: u64,
    tolerance: f64,
    flows: Vec<FlowJson>,
    multicast: Vec<MulticastJson>,
}

fn flow_line(net: &Network, a: &FlowAnalysis) -> String {
    format!(
        "flow {}->{}: min_cut={} diversity={} dof={} argmin_cut_diversity={} argmin_cut_dof={}",
        a.source,
        a.sink,
        a.min_cut_value,
        a.diversity(),
        a.dof,
        a.argmin_cut_diversity.describe(net),
        a.argmin_cut_dof.describe(net)
    )
}

fn analyze(cli: &Cli, path: &Path, json_out: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let tol = cli.global.tol;
    let net = load(path, cli.global.seed)?.network;
    let mut report = header(cli, "analyze");
    let mut dump = AnalysisJson {
        seed: cli.global.seed,
        tolerance: tol,
        flows: Vec::new(),
        multicast: Vec::new(),
    };
    for (s, t) in net.flows() {
        let a = analyze_flow(&net, &s, &t, tol)?;
        writeln!(report, "{}", flow_line(&net, &a)).unwrap();
        dump.flows.push(FlowJson {
            source: s,
            sink: t,
            min_cut: a.min_cut_value,
            diversity: a.diversity(),
            dof: a.dof,
            argmin_cut_diversity: CutJson::new(&net, &a.argmin_cut_diversity),
            argmin_cut_dof: CutJson::new(&net, &a.argmin_cut_dof),
        });
    }
    for (s, sinks) in multicast_groups(&net) {
        let m = multicast_dof(&net, &s, &sinks, tol)?;
        let per: Vec<String> = m.per_sink.iter().map(|(t, d)| format!("{t}:{}", d.dof)).collect();
        writeln!(report, "multicast {s}->{{{}}}: dof={} per_sink={}", sinks.join(","), m.dof, per.join(",")).unwrap();
        dump.multicast.push(MulticastJson {
            source: s,
            sinks,
            dof: m.dof,
            per_sink: m.per_sink.iter().map(|(t, d)| (t.clone(), d.dof)).collect(),
        });
    }
    out.write_all(report.as_bytes())?;
    if let Some(p) = json_out {
        let mut text = serde_json::to_string_pretty(&dump).expect("analysis serializes");
        text.push('\n');
        std::fs::write(p, text)?;
    }
    Ok(EXIT_OK)
}

fn lift_options(cli: &Cli, args: &LiftArgs) -> Result<LiftOptions, Failure> {
    if args.max_attempts == 0 {
        return Err(Failure::usage("--max-attempts must be at least 1"));
    }
    Ok(LiftOptions {
        rel_tol: cli.global.tol,
        max_attempts: args.max_attempts,
        prime: args.prime,
    })
}

fn cert_summary(c: &LiftCertificate) -> String {
    let bad = c.violations().count();
    if bad == 0 {
        format!("certificate: {} cuts, valid", c.rows.len())
    } else {
        format!("certificate: {} cuts, {bad} violating", c.rows.len())
    }
}

fn violation_lines(net: &Network, c: &LiftCertificate) -> String {
    let mut s = String::new();
    for r in c.violations() {
        let cut = Cut::from_mask(net, r.cut_mask);
        writeln!(
            s,
            "  violating cut {} mask={} rank_H={} rank_G={}",
            cut.describe(net),
            r.cut_mask,
            r.rank_h,
            r.rank_g
        )
        .unwrap();
    }
    s
}

fn lift_cmd(
    cli: &Cli,
    path: &Path,
    args: &LiftArgs,
    lifted: Option<&Path>,
    cert_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let net = load(path, cli.global.seed)?.network;
    let opts = lift_options(cli, args)?;
    let (dn, cert) = lift_network_with(&net, cli.global.seed, &opts)?;
    let mut report = header(cli, "lift");
    let primes: Vec<String> = cert.primes_tried.iter().map(u64::to_string).collect();
    writeln!(
        report,
        "prime p={} q={} attempts={} primes_tried={}",
        dn.p(),
        dn.q(),
        cert.attempts,
        primes.join(",")
    )
    .unwrap();
    writeln!(report, "{}", cert_summary(&cert)).unwrap();
    report.push_str(&violation_lines(&net, &cert));
    match cert_path {
        Some(p) => std::fs::write(p, cert.to_csv())?,
        None => report.push_str(&cert.to_csv()),
    }
    match lifted {
        Some(p) => std::fs::write(p, dn.to_json())?,
        None => report.push_str(&dn.to_json()),
    }
    out.write_all(report.as_bytes())?;
    Ok(if cert.is_valid() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn simulate(cli: &Cli, path: &Path, sim: &SimArgs, csv_path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    if sim.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if sim.snr_min_db > sim.snr_max_db {
        return Err(Failure::usage("--snr-min-db exceeds --snr-max-db"));
    }
    let grid = snr_grid(sim.snr_min_db, sim.snr_max_db, sim.snr_step_db)?;
    let net = load(path, cli.global.seed)?.network;
    let flows: Vec<(usize, (String, String))> = net
        .flows()
        .into_iter()
        .enumerate()
        .filter(|(_, (s, t))| {
            sim.source.as_deref().is_none_or(|x| x == s) && sim.sink.as_deref().is_none_or(|x| x == t)
        })
        .collect();
    if flows.is_empty() {
        return Err(Failure::usage("no flow matches --source/--sink"));
    }
    let mut report = format!(
        "# netdof simulate seed={} rate={} trials={} estimator={:?}\n",
        cli.global.seed, sim.rate, sim.trials, sim.estimator
    )
    .to_lowercase();
    let mut csv = String::new();
    for (k, (s, t)) in &flows {
        let sched = build_schedule(&net, s, t)?;
        let cfg = SimConfig {
            rate: sim.rate,
            snr_db: grid.clone(),
            trials: sim.trials,
            seed: cli.global.seed.wrapping_add(*k as u64),
            estimator: sim.estimator.into(),
        };
        let curve = simulate_outage(&net, s, t, &cfg)?;
        let est = match &sim.window_db {
            Some(w) => estimate_diversity(&curve, *w),
            None => estimate_diversity_auto(&curve),
        };
        write!(
            report,
            "flow {s}->{t}: paths={} slots={} min_cut={} ",
            sched.width(),
            sched.total_slots(),
            max_diversity(&net, s, t)?
        )
        .unwrap();
        match &est {
            Ok(e) => writeln!(
                report,
                "diversity_slope={:.4} window_db={}..{} residual={:.3e}",
                e.slope, e.window.0, e.window.1, e.residual
            )
            .unwrap(),
            Err(e) => writeln!(report, "diversity_slope=unavailable ({e})").unwrap(),
        }
        if flows.len() > 1 {
            writeln!(csv, "# flow {s}->{t}").unwrap();
        }
        csv.push_str(&curve.to_csv(est.as_ref().ok()));
    }
    match csv_path {
        Some(p) => std::fs::write(p, csv)?,
        None => report.push_str(&csv),
    }
    out.write_all(report.as_bytes())?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    path: &Path,
    lift_path: Option<&Path>,
    lift_args: &LiftArgs,
    slots: Option<usize>,
    af_trials: usize,
    csv_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let seed = cli.global.seed;
    let tol = cli.global.tol;
    if af_trials == 0 {
        return Err(Failure::usage("--af-trials must be at least 1"));
    }
    if slots == Some(0) {
        return Err(Failure::usage("--T must be at least 1"));
    }
    let net = load(path, seed)?.network;
    let mut r = format!("# netdof verify seed={seed} tol={tol:e} af_trials={af_trials}\n");
    let mut failed = 0usize;
    let mut mark = |ok: bool| {
        if !ok {
            failed += 1;
        }
        if ok {
            "ok"
        } else {
            "FAIL"
        }
    };

    let flows = net.flows();
    for (s, t) in &flows {
        let mf = max_diversity(&net, s, t)?;
        let (bf, cut) = brute_force_min_cut(&net, s, t)?;
        writeln!(
            r,
            "[min-cut] {s}->{t}: max_flow={mf} brute_force={bf} cut={} {}",
            cut.describe(&net),
            mark(mf == bf)
        )
        .unwrap();
    }

    let (dn, cert) = match lift_path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            let doc = parse_document(&text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            let dn = DeterministicNetwork::from_document(&doc)?;
            let cert = certify(&net, &dn, tol)?;
            (dn, cert)
        }
        None => match lift_network_with(&net, seed, &lift_options(cli, lift_args)?) {
            Ok(x) => x,
            Err(crate::galois::GaloisError::AttemptsExhausted { attempts, primes }) => {
                writeln!(r, "[lift] no certified lift after {attempts} attempts over {primes:?} FAIL").unwrap();
                writeln!(r, "result: 1 check(s) failed").unwrap();
                out.write_all(r.as_bytes())?;
                return Ok(EXIT_CHECK_FAILED);
            }
            Err(e) => return Err(e.into()),
        },
    };
    writeln!(r, "[lift] p={} q={} {} {}", dn.p(), dn.q(), cert_summary(&cert), mark(cert.is_valid())).unwrap();
    r.push_str(&violation_lines(&net, &cert));

    let mut dofs = BTreeMap::new();
    for (s, t) in &flows {
        let d = analyze_flow(&net, s, t, tol)?.dof;
        dofs.insert((s.clone(), t.clone()), d);
        let (det, cut) = deterministic_min_cut_rank(&dn, s, t)?;
        writeln!(
            r,
            "[lift] {s}->{t}: dof={d} deterministic={det} argmin={} {}",
            cut.describe(&net),
            mark(det == d)
        )
        .unwrap();
    }

    let mut csv = String::from("source,sink,trial,slots,rank\n");
    for (k, (s, t)) in flows.iter().enumerate() {
        let d = dofs[&(s.clone(), t.clone())];
        let t_slots = match slots {
            Some(n) => n,
            None => LayerPlan::new(&net, s, t)?.latency.max(1),
        };
        let af = achievable_dof_af(&net, s, t, af_trials, t_slots, seed.wrapping_add(k as u64), tol)?;
        for (i, rank) in af.ranks.iter().enumerate() {
            writeln!(csv, "{s},{t},{i},{t_slots},{rank}").unwrap();
        }
        let ranks: Vec<String> = af.ranks.iter().map(usize::to_string).collect();
        writeln!(
            r,
            "[af] {s}->{t}: T={t_slots} dof={d} af_dof={} ranks={} {}",
            af.dof,
            ranks.join(","),
            mark(af.dof == d)
        )
        .unwrap();

        let (_, g) = best_relays_fp(&dn, s, t, af_trials, 1, seed.wrapping_add(k as u64))?;
        match extract_zero_error_code(&g.matrix) {
            Ok(code) => {
                let check = verify_zero_error(&code, &g.matrix, seed);
                writeln!(
                    r,
                    "[zero-error] {s}->{t}: p={} dimension={} messages={} {} {}",
                    dn.p(),
                    code.dimension,
                    check.messages_checked,
                    if check.exhaustive { "exhaustive" } else { "sampled" },
                    mark(check.ok)
                )
                .unwrap();
                if let Some(m) = check.counterexample {
                    writeln!(r, "  counterexample message {m:?}").unwrap();
                }
            }
            Err(e) => {
                writeln!(r, "[zero-error] {s}->{t}: {e} {}", mark(d == 0)).unwrap();
            }
        }
    }

    for (s, sinks) in multicast_groups(&net) {
        let m = multicast_dof(&net, &s, &sinks, tol)?;
        let det = deterministic_multicast_rank(&dn, &s, &sinks)?;
        writeln!(
            r,
            "[multicast] {s}->{{{}}}: dof={} deterministic={det} {}",
            sinks.join(","),
            m.dof,
            mark(det == m.dof)
        )
        .unwrap();
    }

    if failed == 0 {
        writeln!(r, "result: all checks passed").unwrap();
    } else {
        writeln!(r, "result: {failed} check(s) failed").unwrap();
    }
    if let Some(p) = csv_path {
        std::fs::write(p, csv)?;
    }
    out.write_all(r.as_bytes())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn paths(cli: &Cli, path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let net = load(path, cli.global.seed)?.network;
    let mut r = String::new();
    for (s, t) in net.flows() {
        let ps = edge_disjoint_paths(&net, &s, &t)?;
        writeln!(r, "flow {s}->{t}: {} paths", ps.len()).unwrap();
        for p in ps {
            let hops: Vec<String> = p
                .iter()
                .map(|&e| {
                    let edge = &net.edges()[e];
                    format!("{}->{}", edge.from, edge.to)
                })
                .collect();
            writeln!(r, "{}", hops.join(" ")).unwrap();
        }
    }
    out.write_all(r.as_bytes())?;
    Ok(EXIT_OK)
}
