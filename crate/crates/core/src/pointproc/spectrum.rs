use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{EventSeries, PointProcError};

/// Spectral density on the grid Ω_n = 2πn/T, n = 1..=n_max, averaged over
/// runs. `stderr` is the standard error of the run average.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEstimate {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Mean event rate, or mean energy rate for marked series.
    pub rate: f64,
    pub n_runs: usize,
    pub duration: f64,
}

impl SpectrumEstimate {
    /// S/D: unity for a Poisson process.
    #[must_use]
    pub fn normalized(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.values.iter().map(|v| v / self.rate).collect(),
            self.stderr.iter().map(|v| v / self.rate).collect(),
        )
    }

    /// Average groups of `k` adjacent frequencies; trailing partial groups
    /// are dropped. Standard errors combine as independent bins.
    #[must_use]
    pub fn rebin(&self, k: usize) -> SpectrumEstimate {
        let k = k.max(1);
        let groups = self.omegas.len() / k;
        let mut out = SpectrumEstimate {
            omegas: Vec::with_capacity(groups),
            values: Vec::with_capacity(groups),
            stderr: Vec::with_capacity(groups),
            ..self.clone()
        };
        for g in 0..groups {
            let r = g * k..(g + 1) * k;
            out.omegas.push(self.omegas[r.clone()].iter().sum::<f64>() / k as f64);
            out.values.push(self.values[r.clone()].iter().sum::<f64>() / k as f64);
            out.stderr.push(self.stderr[r].iter().map(|e| e * e).sum::<f64>().sqrt() / k as f64);
        }
        out
    }
}

/// |Σ_k m_k exp(jΩ_n t_k)|² / T for n = 1..=n_max.
fn single_periodogram(s: &EventSeries, n_max: usize) -> Vec<f64> {
    let t_total = s.duration();
    let mut acc = vec![Complex64::new(0.0, 0.0); n_max];
    for (i, &t) in s.times().iter().enumerate() {
        let m = s.mark(i);
        let z = Complex64::from_polar(1.0, 2.0 * PI * t / t_total);
        let mut w = z;
        for (n, a) in acc.iter_mut().enumerate() {
            *a += w * m;
            w *= z;
            // re-anchor the running power to keep rounding drift bounded
            if n % 256 == 255 {
                w = Complex64::from_polar(1.0, 2.0 * PI * t * (n + 2) as f64 / t_total);
            }
        }
    }
    acc.iter().map(|a| a.norm_sqr() / t_total).collect()
}

/// Run-averaged periodogram (1/T)⟨|Σ m_k e^{jΩ_n t_k}|²⟩.
pub fn periodogram(series: &[EventSeries], n_max: usize) -> Result<SpectrumEstimate, PointProcError> {
    if series.is_empty() || series.iter().all(EventSeries::is_empty) {
        return Err(PointProcError::EmptySeriesSet);
    }
    if n_max == 0 {
        return Err(PointProcError::InvalidArgument("n_max must be at least 1".into()));
    }
    let t_total = series[0].duration();
    for s in series {
        if (s.duration() - t_total).abs() > 1e-12 * t_total {
            return Err(PointProcError::MismatchedDurations(t_total, s.duration()));
        }
    }
    let per_run: Vec<Vec<f64>> = series.par_iter().map(|s| single_periodogram(s, n_max)).collect();
    let r = per_run.len() as f64;
    let mut values = vec![0.0; n_max];
    for run in &per_run {
        for (v, x) in values.iter_mut().zip(run) {
            *v += x;
        }
    }
    for v in &mut values {
        *v /= r;
    }
    let stderr = if per_run.len() > 1 {
        (0..n_max)
            .map(|n| {
                let var = per_run.iter().map(|run| (run[n] - values[n]).powi(2)).sum::<f64>() / (r - 1.0);
                (var / r).sqrt()
            })
            .collect()
    } else {
        // single run: a periodogram ordinate is roughly exponential, std = mean
        values.clone()
    };
    let rate = series.iter().map(EventSeries::rate).sum::<f64>() / r;
    Ok(SpectrumEstimate {
        omegas: (1..=n_max).map(|n| 2.0 * PI * n as f64 / t_total).collect(),
        values,
        stderr,
        rate,
        n_runs: series.len(),
        duration: t_total,
    })
}

/// N(Ω) = S(Ω)/D² − 1/D with its standard error S_err/D².
pub fn relative_noise(spec: &SpectrumEstimate) -> Result<(Vec<f64>, Vec<f64>), PointProcError> {
    let d = spec.rate;
    if !(d > 0.0) {
        return Err(PointProcError::ZeroRate);
    }
    Ok((
        spec.values.iter().map(|s| s / (d * d) - 1.0 / d).collect(),
        spec.stderr.iter().map(|e| e / (d * d)).collect(),
    ))
}

/// First Ω at which the curve rises through `level`, linearly interpolated.
#[must_use]
pub fn first_upward_crossing(omegas: &[f64], values: &[f64], level: f64) -> Option<f64> {
    let n = omegas.len().min(values.len());
    (1..n).find_map(|i| {
        let (a, b) = (values[i - 1] - level, values[i] - level);
        (a < 0.0 && b >= 0.0).then(|| omegas[i - 1] + (omegas[i] - omegas[i - 1]) * a / (a - b))
    })
}

/// Location of the maximum, refined by a parabola through its neighbours.
#[must_use]
pub fn peak_location(omegas: &[f64], values: &[f64]) -> Option<f64> {
    let n = omegas.len().min(values.len());
    let i = (0..n).filter(|&i| values[i].is_finite()).max_by(|&a, &b| values[a].total_cmp(&values[b]))?;
    if i == 0 || i + 1 >= n {
        return Some(omegas[i]);
    }
    let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
    let den = y0 - 2.0 * y1 + y2;
    if den >= 0.0 {
        return Some(omegas[i]);
    }
    let shift = (0.5 * (y0 - y2) / den).clamp(-0.5, 0.5);
    let h = if shift >= 0.0 { omegas[i + 1] - omegas[i] } else { omegas[i] - omegas[i - 1] };
    Some(omegas[i] + shift * h)
}
