use std::fmt::Write as _;

use rand::Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::model::Network;
use crate::rng;

use super::{build_schedule, effective_snr, DiversityEstimate, OutageError};

/// Trials per independent random stream.
pub const BLOCK: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Estimator {
    /// Plain Monte Carlo with Rayleigh fading.
    Naive,
    /// Importance sampling. Each fading power is drawn from an even mixture
    /// of `Exp(1)` and an exponential with mean `(2^R - 1) / rho`, and
    /// reweighted. Weights stay below 2 per hop, and deep fades are sampled
    /// often enough to resolve tiny outage probabilities.
    #[default]
    Mixture,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Target rate in bits per block.
    pub rate: f64,
    pub snr_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub estimator: Estimator,
}

impl SimConfig {
    pub fn new(rate: f64, snr_db: Vec<f64>, trials: u64, seed: u64) -> Self {
        Self {
            rate,
            snr_db,
            trials,
            seed,
            estimator: Estimator::default(),
        }
    }

    fn check(&self) -> Result<(), OutageError> {
        if self.trials == 0 {
            return Err(OutageError::NoTrials);
        }
        if self.snr_db.is_empty() || self.snr_db.iter().any(|x| !x.is_finite()) {
            return Err(OutageError::BadGrid);
        }
        if !(self.rate.is_finite() && self.rate >= 0.0) {
            return Err(OutageError::BadRate(self.rate));
        }
        Ok(())
    }
}

/// `min, min + step, ...` up to `max` inclusive.
pub fn snr_grid(min_db: f64, max_db: f64, step_db: f64) -> Result<Vec<f64>, OutageError> {
    if !(min_db.is_finite() && max_db.is_finite() && step_db > 0.0) || min_db > max_db {
        return Err(OutageError::BadGrid);
    }
    let n = ((max_db - min_db) / step_db + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| min_db + k as f64 * step_db).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutagePoint {
    pub snr_db: f64,
    pub p_out: f64,
    pub trials: u64,
    pub stderr: f64,
    /// Trials that ended in outage, before reweighting.
    pub events: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutageCurve {
    pub points: Vec<OutagePoint>,
    pub rate: f64,
    pub seed: u64,
}

impl OutageCurve {
    pub fn to_csv(&self, estimate: Option<&DiversityEstimate>) -> String {
        let mut s = String::from("snr_db,p_out,trials,stderr\n");
        for p in &self.points {
            writeln!(s, "{},{:.6e},{},{:.3e}", p.snr_db, p.p_out, p.trials, p.stderr).unwrap();
        }
        if let Some(e) = estimate {
            writeln!(
                s,
                "# diversity_slope={:.4} window_db={}..{} residual={:.3e} rate={} seed={}",
                e.slope, e.window.0, e.window.1, e.residual, self.rate, self.seed
            )
            .unwrap();
        }
        s
    }
}

/// Outage of the parallel channel formed by AF paths with the given hop
/// counts, every hop an independent Rayleigh fade.
pub fn simulate_paths(hops: &[usize], cfg: &SimConfig) -> Result<OutageCurve, OutageError> {
    cfg.check()?;
    assert!(!hops.is_empty() && hops.iter().all(|&h| h > 0), "every path needs a hop");
    let points = cfg
        .snr_db
        .iter()
        .enumerate()
        .map(|(i, &db)| point(hops, cfg, i as u64, db))
        .collect();
    Ok(OutageCurve {
        points,
        rate: cfg.rate,
        seed: cfg.seed,
    })
}

/// Outage of the `s -> t` flow under the edge-disjoint path schedule.
pub fn simulate_outage(net: &Network, s: &str, t: &str, cfg: &SimConfig) -> Result<OutageCurve, OutageError> {
    let sched = build_schedule(net, s, t)?;
    let hops: Vec<usize> = sched.paths.iter().map(Vec::len).collect();
    simulate_paths(&hops, cfg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowCurve {
    pub source: String,
    pub sink: String,
    pub curve: OutageCurve,
}

/// Every declared flow simulated on its own, as if the flows took turns.
/// Flow `k` uses seed `cfg.seed + k`.
pub fn simulate_flows(net: &Network, cfg: &SimConfig) -> Result<Vec<FlowCurve>, OutageError> {
    net.flows()
        .into_iter()
        .enumerate()
        .map(|(k, (s, t))| {
            let cfg = SimConfig {
                seed: cfg.seed.wrapping_add(k as u64),
                ..cfg.clone()
            };
            let curve = simulate_outage(net, &s, &t, &cfg)?;
            Ok(FlowCurve {
                source: s,
                sink: t,
                curve,
            })
        })
        .collect()
}

#[derive(Default, Clone, Copy)]
struct Sums {
    w: f64,
    w2: f64,
    events: u64,
}

fn point(hops: &[usize], cfg: &SimConfig, index: u64, snr_db: f64) -> OutagePoint {
    let rho = 10f64.powf(snr_db / 10.0);
    let theta = match cfg.estimator {
        Estimator::Naive => 1.0,
        Estimator::Mixture => ((cfg.rate.exp2() - 1.0) / rho).clamp(f64::MIN_POSITIVE, 1.0),
    };
    let blocks = cfg.trials.div_ceil(BLOCK);
    let partial: Vec<Sums> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK.min(cfg.trials - b * BLOCK);
            let mut rng = rng::stream(cfg.seed, rng::pair_stream(index, b));
            block(hops, cfg.rate, rho, theta, n, &mut rng)
        })
        .collect();
    let mut tot = Sums::default();
    for s in partial {
        tot.w += s.w;
        tot.w2 += s.w2;
        tot.events += s.events;
    }
    let n = cfg.trials as f64;
    let p = tot.w / n;
    let var = (tot.w2 / n - p * p).max(0.0);
    OutagePoint {
        snr_db,
        p_out: p.clamp(0.0, 1.0),
        trials: cfg.trials,
        stderr: (var / n).sqrt(),
        events: tot.events,
    }
}

fn block<R: Rng>(hops: &[usize], rate: f64, rho: f64, theta: f64, n: u64, rng: &mut R) -> Sums {
    let mut sums = Sums::default();
    let longest = hops.iter().copied().max().unwrap_or(0);
    let mut powers = vec![0.0; longest];
    for _ in 0..n {
        let mut w = 1.0;
        let mut info = 0.0;
        for &h in hops {
            for x in powers[..h].iter_mut() {
                let (draw, weight) = fade(rng, theta);
                *x = draw;
                w *= weight;
            }
            info += effective_snr(&powers[..h], rho).ln_1p() / std::f64::consts::LN_2;
        }
        if !(info > rate) {
            sums.w += w;
            sums.w2 += w * w;
            sums.events += 1;
        }
    }
    sums
}

/// Fading power and its likelihood ratio against `Exp(1)`.
fn fade<R: Rng>(rng: &mut R, theta: f64) -> (f64, f64) {
    if theta >= 1.0 {
        return (rng.sample::<f64, _>(Exp1), 1.0);
    }
    let e: f64 = rng.sample(Exp1);
    let x = if rng.random_bool(0.5) { e } else { theta * e };
    let w = 1.0 / (0.5 + 0.5 * (x - x / theta).exp() / theta);
    (x, w)
}
