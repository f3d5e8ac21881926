use super::{EventSeries, PointProcError};

/// Normalized pair correlation g(τ) on bins of width tau_max/bins.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationEstimate {
    pub taus: Vec<f64>,
    pub g: Vec<f64>,
    pub stderr: Vec<f64>,
    pub rate: f64,
    pub bin_width: f64,
}

fn single_counts(s: &EventSeries, tau_max: f64, bins: usize) -> Vec<f64> {
    let t = s.times();
    let width = tau_max / bins as f64;
    let limit = s.duration() - tau_max;
    let mut counts = vec![0.0; bins];
    for (i, &a) in t.iter().enumerate() {
        // only first events whose full τ range lies inside the window
        if a >= limit {
            break;
        }
        for &b in &t[i + 1..] {
            let d = b - a;
            if d >= tau_max {
                break;
            }
            counts[((d / width) as usize).min(bins - 1)] += 1.0;
        }
    }
    counts
}

/// Histogram of ordered pair separations, normalized by D²·(T − τ_max)·Δτ
/// so that a Poisson process gives 1. The first event of each pair is
/// restricted to [0, T − τ_max) to avoid the edge deficit.
pub fn correlation_estimate(
    series: &[EventSeries],
    tau_max: f64,
    bins: usize,
) -> Result<CorrelationEstimate, PointProcError> {
    if series.is_empty() || series.iter().all(EventSeries::is_empty) {
        return Err(PointProcError::EmptySeriesSet);
    }
    if bins == 0 || !(tau_max > 0.0) {
        return Err(PointProcError::InvalidArgument("need bins ≥ 1 and tau_max > 0".into()));
    }
    for s in series {
        if tau_max >= s.duration() / 2.0 {
            return Err(PointProcError::WindowTooLarge { window: tau_max, duration: s.duration() });
        }
    }
    let width = tau_max / bins as f64;
    let mut total = vec![0.0; bins];
    let mut norm_total = 0.0;
    let mut per_run = Vec::with_capacity(series.len());
    for s in series {
        let d = s.len() as f64 / s.duration();
        let norm = d * d * (s.duration() - tau_max) * width;
        let c = single_counts(s, tau_max, bins);
        for (t, x) in total.iter_mut().zip(&c) {
            *t += x;
        }
        norm_total += norm;
        if norm > 0.0 {
            per_run.push(c.iter().map(|x| x / norm).collect::<Vec<_>>());
        }
    }
    if norm_total == 0.0 {
        return Err(PointProcError::ZeroRate);
    }
    let g: Vec<f64> = total.iter().map(|c| c / norm_total).collect();
    let r = per_run.len() as f64;
    let stderr = if per_run.len() > 1 {
        (0..bins)
            .map(|k| {
                let var = per_run.iter().map(|run| (run[k] - g[k]).powi(2)).sum::<f64>() / (r - 1.0);
                (var / r).sqrt()
            })
            .collect()
    } else {
        total.iter().map(|c| c.sqrt() / norm_total).collect()
    };
    let rate = series.iter().map(|s| s.len() as f64 / s.duration()).sum::<f64>() / series.len() as f64;
    Ok(CorrelationEstimate {
        taus: (0..bins).map(|k| (k as f64 + 0.5) * width).collect(),
        g,
        stderr,
        rate,
        bin_width: width,
    })
}

/// N(Ω) = 2∫₀^∞ (g(τ) − 1) cos Ωτ dτ, midpoint rule over the estimate's bins.
/// Returns the curve and its propagated standard error.
#[must_use]
pub fn correlation_to_noise(corr: &CorrelationEstimate, omegas: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let h = corr.bin_width;
    omegas
        .iter()
        .map(|&w| {
            let mut v = 0.0;
            let mut e2 = 0.0;
            for ((&t, &g), &e) in corr.taus.iter().zip(&corr.g).zip(&corr.stderr) {
                // exact integral of cos over the bin instead of the midpoint value
                let kernel = if w == 0.0 {
                    h
                } else {
                    2.0 * (w * t).cos() * (w * h / 2.0).sin() / w
                };
                v += 2.0 * (g - 1.0) * kernel;
                e2 += (2.0 * e * kernel).powi(2);
            }
            (v, e2.sqrt())
        })
        .unzip()
}
