use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EventSeries, PointProcError};

/// Keep each event independently with probability `keep_prob`.
pub fn thin(series: &EventSeries, keep_prob: f64, seed: u64) -> Result<EventSeries, PointProcError> {
    if !(keep_prob > 0.0 && keep_prob <= 1.0) {
        return Err(PointProcError::InvalidProbability(keep_prob));
    }
    if keep_prob == 1.0 {
        return Ok(series.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut times = Vec::with_capacity((series.len() as f64 * keep_prob) as usize + 16);
    let mut marks = series.marks().map(|_| Vec::with_capacity(times.capacity()));
    for (i, &t) in series.times().iter().enumerate() {
        if rng.random::<f64>() < keep_prob {
            times.push(t);
            if let Some(m) = marks.as_mut() {
                m.push(series.mark(i));
            }
        }
    }
    EventSeries::new(times, series.duration(), marks)
}

/// Merge series with a common duration. Exactly coincident times are pushed
/// apart by one ulp so that no event is lost.
pub fn superpose(series_list: &[EventSeries]) -> Result<EventSeries, PointProcError> {
    let first = series_list.first().ok_or(PointProcError::EmptySeriesSet)?;
    let t_total = first.duration();
    for s in series_list {
        if (s.duration() - t_total).abs() > 1e-12 * t_total {
            return Err(PointProcError::MismatchedDurations(t_total, s.duration()));
        }
    }
    let marked = series_list.iter().any(EventSeries::is_marked);
    let mut events: Vec<(f64, f64)> = series_list
        .iter()
        .flat_map(|s| s.times().iter().enumerate().map(move |(i, &t)| (t, s.mark(i))))
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut times = Vec::with_capacity(events.len());
    let mut marks = Vec::with_capacity(if marked { events.len() } else { 0 });
    for (t, m) in events {
        let t = match times.last() {
            Some(&prev) if t <= prev => f64::from_bits(prev.to_bits() + 1),
            _ => t,
        };
        if t >= t_total {
            return Err(PointProcError::InvalidSeries("coincident events at the end of the window".into()));
        }
        times.push(t);
        if marked {
            marks.push(m);
        }
    }
    EventSeries::new(times, t_total, marked.then_some(marks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thin_identity_and_determinism() {
        let s = EventSeries::new((0..100).map(|k| k as f64 * 0.1).collect(), 10.0, None).unwrap();
        assert_eq!(thin(&s, 1.0, 3).unwrap(), s);
        assert_eq!(thin(&s, 0.4, 3).unwrap(), thin(&s, 0.4, 3).unwrap());
        assert!(thin(&s, 0.4, 3).unwrap().len() < 100);
        assert_eq!(thin(&s, 0.0, 3), Err(PointProcError::InvalidProbability(0.0)));
        assert!(thin(&s, 1.5, 3).is_err());
    }

    #[test]
    fn superpose_interleaves() {
        let a = EventSeries::new(vec![0.0, 2.0, 4.0], 6.0, None).unwrap();
        let b = EventSeries::new(vec![1.0, 3.0, 5.0], 6.0, None).unwrap();
        let m = superpose(&[a.clone(), b]).unwrap();
        assert_eq!(m.times(), &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(superpose(&[a.clone()]).unwrap(), a);
        let c = superpose(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(c.len(), 6);
        assert!((c.rate() - 2.0 * a.rate()).abs() < 1e-15);
        let d = EventSeries::new(vec![1.0], 7.0, None).unwrap();
        assert!(matches!(superpose(&[a, d]), Err(PointProcError::MismatchedDurations(..))));
    }

    #[test]
    fn superpose_keeps_marks() {
        let a = EventSeries::new(vec![0.5], 2.0, Some(vec![3.0])).unwrap();
        let b = EventSeries::new(vec![0.25], 2.0, None).unwrap();
        let m = superpose(&[a, b]).unwrap();
        assert_eq!(m.marks().unwrap(), &[1.0, 3.0]);
    }
}
