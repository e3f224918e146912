use super::{OutageCurve, OutageError};

/// Points needing at least this many outage events to join an automatic window.
pub const MIN_EVENTS: u64 = 100;
/// Widest automatic window, in dB.
pub const AUTO_WINDOW_DB: f64 = 15.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DiversityEstimate {
    /// Least-squares slope of `-log10 P_out` against `log10 rho`.
    pub slope: f64,
    /// SNR range of the fit, in dB.
    pub window: (f64, f64),
    /// Root-mean-square fit residual in decades.
    pub residual: f64,
}

/// Fits the points whose SNR lies in `window` (inclusive, dB).
pub fn estimate_diversity(curve: &OutageCurve, window: (f64, f64)) -> Result<DiversityEstimate, OutageError> {
    let (lo, hi) = window;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for p in curve.points.iter().filter(|p| p.snr_db >= lo - 1e-9 && p.snr_db <= hi + 1e-9) {
        if p.p_out <= 0.0 {
            return Err(OutageError::ZeroEstimate { snr_db: p.snr_db });
        }
        xs.push(p.snr_db / 10.0);
        ys.push(-p.p_out.log10());
    }
    if xs.len() < 2 {
        return Err(OutageError::InsufficientPoints { found: xs.len() });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let ss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    Ok(DiversityEstimate {
        slope,
        window: (xs[0] * 10.0, xs[xs.len() - 1] * 10.0),
        residual: (ss / n).sqrt(),
    })
}

/// Picks the highest-SNR run of points that each saw at least
/// [`MIN_EVENTS`] outages, at most [`AUTO_WINDOW_DB`] wide, and fits it.
pub fn estimate_diversity_auto(curve: &OutageCurve) -> Result<DiversityEstimate, OutageError> {
    let pts = &curve.points;
    let Some(top) = pts.iter().rposition(|p| p.events >= MIN_EVENTS && p.p_out > 0.0) else {
        return Err(OutageError::InsufficientPoints { found: 0 });
    };
    let mut start = top;
    while start > 0 {
        let p = &pts[start - 1];
        if p.events < MIN_EVENTS || p.p_out <= 0.0 || pts[top].snr_db - p.snr_db > AUTO_WINDOW_DB + 1e-9 {
            break;
        }
        start -= 1;
    }
    estimate_diversity(curve, (pts[start].snr_db, pts[top].snr_db))
}
