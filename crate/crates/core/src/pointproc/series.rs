use std::fmt::Write as _;

use super::PointProcError;

/// Ordered event times on [0, duration), optionally with per-event marks.
#[derive(Debug, Clone, PartialEq)]
pub struct EventSeries {
    times: Vec<f64>,
    duration: f64,
    marks: Option<Vec<f64>>,
}

impl EventSeries {
    pub fn new(times: Vec<f64>, duration: f64, marks: Option<Vec<f64>>) -> Result<Self, PointProcError> {
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(PointProcError::InvalidSeries(format!("duration {duration} must be positive")));
        }
        for (i, &t) in times.iter().enumerate() {
            if !(0.0..duration).contains(&t) {
                return Err(PointProcError::InvalidSeries(format!("time {t} outside [0, {duration})")));
            }
            if i > 0 && t <= times[i - 1] {
                return Err(PointProcError::InvalidSeries(format!("times not strictly increasing at index {i}")));
            }
        }
        if let Some(m) = &marks {
            if m.len() != times.len() {
                return Err(PointProcError::InvalidSeries("marks length differs from times".into()));
            }
            if let Some(bad) = m.iter().find(|v| !(**v >= 0.0)) {
                return Err(PointProcError::InvalidSeries(format!("negative mark {bad}")));
            }
        }
        Ok(Self { times, duration, marks })
    }

    /// Sorts the input and drops exact duplicates before validating.
    pub fn from_unsorted(mut times: Vec<f64>, duration: f64) -> Result<Self, PointProcError> {
        times.sort_by(f64::total_cmp);
        times.dedup();
        Self::new(times, duration, None)
    }

    #[must_use]
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    #[must_use]
    pub fn marks(&self) -> Option<&[f64]> {
        self.marks.as_deref()
    }

    #[must_use]
    pub fn duration(&self) -> f64 {
        self.duration
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.times.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    #[must_use]
    pub fn is_marked(&self) -> bool {
        self.marks.is_some()
    }

    /// Events per unit time, or energy per unit time when marked.
    #[must_use]
    pub fn rate(&self) -> f64 {
        match &self.marks {
            Some(m) => m.iter().sum::<f64>() / self.duration,
            None => self.times.len() as f64 / self.duration,
        }
    }

    #[must_use]
    pub fn mark(&self, i: usize) -> f64 {
        self.marks.as_ref().map_or(1.0, |m| m[i])
    }

    /// Number of events in [a, b).
    #[must_use]
    pub fn count_in(&self, a: f64, b: f64) -> usize {
        let lo = self.times.partition_point(|&t| t < a);
        let hi = self.times.partition_point(|&t| t < b);
        hi - lo
    }

    /// Text form: `# duration=<T> marked=<0|1>` then `time[,mark]` per line.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.times.len() * 24 + 40);
        let _ = writeln!(s, "# duration={} marked={}", self.duration, u8::from(self.is_marked()));
        for (i, t) in self.times.iter().enumerate() {
            match &self.marks {
                Some(m) => {
                    let _ = writeln!(s, "{t},{}", m[i]);
                }
                None => {
                    let _ = writeln!(s, "{t}");
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, PointProcError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(PointProcError::Parse { line: 1, msg: "empty file".into() })?;
        let header = header
            .strip_prefix('#')
            .ok_or(PointProcError::Parse { line: 1, msg: "missing '#' header".into() })?;
        let mut duration = None;
        let mut marked = None;
        for kv in header.split_whitespace() {
            match kv.split_once('=') {
                Some(("duration", v)) => {
                    duration = Some(v.parse::<f64>().map_err(|e| PointProcError::Parse { line: 1, msg: e.to_string() })?);
                }
                Some(("marked", v)) => marked = Some(v == "1"),
                _ => {}
            }
        }
        let duration = duration.ok_or(PointProcError::Parse { line: 1, msg: "header lacks duration".into() })?;
        let marked = marked.ok_or(PointProcError::Parse { line: 1, msg: "header lacks marked".into() })?;
        let mut times = Vec::new();
        let mut marks = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: String| PointProcError::Parse { line: i + 1, msg };
            let mut parts = line.split(',');
            let t: f64 = parts.next().unwrap().trim().parse().map_err(|e: std::num::ParseFloatError| perr(e.to_string()))?;
            times.push(t);
            if marked {
                let m: f64 = parts
                    .next()
                    .ok_or_else(|| perr("missing mark".into()))?
                    .trim()
                    .parse()
                    .map_err(|e: std::num::ParseFloatError| perr(e.to_string()))?;
                marks.push(m);
            }
        }
        Self::new(times, duration, marked.then_some(marks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(EventSeries::new(vec![0.0, 1.0], 2.0, None).is_ok());
        assert!(EventSeries::new(vec![1.0, 1.0], 2.0, None).is_err());
        assert!(EventSeries::new(vec![2.0], 2.0, None).is_err());
        assert!(EventSeries::new(vec![0.5], 2.0, Some(vec![])).is_err());
        assert!(EventSeries::new(vec![0.5], 2.0, Some(vec![-1.0])).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = EventSeries::new(vec![0.125, 0.5, 1.75], 2.0, Some(vec![1.0, 0.25, 3.0])).unwrap();
        let back = EventSeries::from_text(&s.to_text()).unwrap();
        assert_eq!(s, back);
        let u = EventSeries::new(vec![0.1, 0.30000000000000004], 1.0, None).unwrap();
        assert_eq!(EventSeries::from_text(&u.to_text()).unwrap(), u);
        assert_eq!(u.count_in(0.0, 0.2), 1);
    }
}
