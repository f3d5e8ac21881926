use super::{EventSeries, PointProcError};

/// V(T) = var(d)/⟨d⟩ − 1 for the count d in windows of length `window`,
/// sliding in steps of window/8 and pooled over all series.
pub fn count_variance(series: &[EventSeries], window: f64) -> Result<f64, PointProcError> {
    if series.is_empty() || series.iter().all(EventSeries::is_empty) {
        return Err(PointProcError::EmptySeriesSet);
    }
    if !(window > 0.0) {
        return Err(PointProcError::InvalidArgument(format!("window must be positive, got {window}")));
    }
    let step = window / 8.0;
    let (mut n, mut s1, mut s2) = (0usize, 0.0, 0.0);
    for s in series {
        if window > s.duration() / 4.0 {
            return Err(PointProcError::WindowTooLarge { window, duration: s.duration() });
        }
        let starts = ((s.duration() - window) / step).floor() as usize + 1;
        for k in 0..starts {
            let a = k as f64 * step;
            let d = s.count_in(a, a + window) as f64;
            n += 1;
            s1 += d;
            s2 += d * d;
        }
    }
    let mean = s1 / n as f64;
    if mean == 0.0 {
        return Err(PointProcError::ZeroRate);
    }
    let var = (s2 - s1 * s1 / n as f64) / (n as f64 - 1.0);
    Ok(var / mean - 1.0)
}

pub fn count_variance_curve(series: &[EventSeries], windows: &[f64]) -> Result<Vec<f64>, PointProcError> {
    windows.iter().map(|&w| count_variance(series, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_are_nearly_constant() {
        let s = EventSeries::new((0..4000).map(|k| k as f64 + 0.25).collect(), 4000.0, None).unwrap();
        // integer window on a unit lattice: every window holds exactly w events
        let v = count_variance(&[s], 10.0).unwrap();
        assert!((v + 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn window_limit() {
        let s = EventSeries::new(vec![1.0, 2.0], 10.0, None).unwrap();
        assert!(matches!(count_variance(&[s], 3.0), Err(PointProcError::WindowTooLarge { .. })));
    }
}
