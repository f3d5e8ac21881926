//! `compare`: z-scores of a Monte-Carlo spectrum against an analytic curve.

use quietlight::pointproc::peak_location;
use serde::Serialize;

use crate::{CliError, Result};

/// Fraction of in-band |z| ≤ 3 needed to pass.
pub const PASS_FRACTION: f64 = 0.95;
pub const Z_LIMIT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub omega: f64,
    pub mc_value: f64,
    pub mc_stderr: f64,
    pub analytic_value: f64,
    /// (mc − analytic)/stderr; absent when stderr is zero.
    pub z_score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonSummary {
    pub band: (f64, f64),
    pub points_in_band: usize,
    pub max_abs_z: f64,
    pub band_pass_fraction: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub summary: ComparisonSummary,
}

/// Linear interpolation of (xs, ys) at x; `None` outside the support.
fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> Option<f64> {
    let n = xs.len();
    if n == 0 || x < xs[0] || x > xs[n - 1] {
        return None;
    }
    let i = xs.partition_point(|&v| v < x);
    if i < n && xs[i] == x {
        return Some(ys[i]);
    }
    let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
    Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
}

/// Default band: from the lowest MC frequency to twice the analytic peak.
#[must_use]
pub fn default_band(mc_omega: &[f64], th_omega: &[f64], th_value: &[f64]) -> (f64, f64) {
    let lo = mc_omega.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = peak_location(th_omega, th_value).map_or(f64::INFINITY, |w| 2.0 * w);
    (lo, hi)
}

/// Interpolates the analytic curve onto the MC grid and scores every point.
/// Points outside the analytic support are dropped.
pub fn compare_curves(
    mc: (&[f64], &[f64], &[f64]),
    theory: (&[f64], &[f64]),
    band: Option<(f64, f64)>,
) -> Result<ComparisonReport> {
    let (mo, mv, ms) = mc;
    let (to, tv) = theory;
    let mut order: Vec<usize> = (0..to.len()).collect();
    order.sort_by(|&a, &b| to[a].total_cmp(&to[b]));
    let xs: Vec<f64> = order.iter().map(|&i| to[i]).collect();
    let ys: Vec<f64> = order.iter().map(|&i| tv[i]).collect();
    let rows: Vec<ComparisonRow> = (0..mo.len())
        .filter_map(|k| {
            let a = interpolate(&xs, &ys, mo[k])?;
            let z = (ms[k] > 0.0).then(|| (mv[k] - a) / ms[k]);
            Some(ComparisonRow { omega: mo[k], mc_value: mv[k], mc_stderr: ms[k], analytic_value: a, z_score: z })
        })
        .collect();
    if rows.is_empty() {
        return Err(CliError::DisjointGrids);
    }
    let band = band.unwrap_or_else(|| default_band(mo, &xs, &ys));
    let in_band: Vec<&ComparisonRow> = rows.iter().filter(|r| r.omega >= band.0 && r.omega <= band.1).collect();
    let zs: Vec<f64> = in_band.iter().filter_map(|r| r.z_score).collect();
    let max_abs_z = zs.iter().fold(0.0f64, |m, z| m.max(z.abs()));
    let ok = zs.iter().filter(|z| z.abs() <= Z_LIMIT).count();
    let band_pass_fraction = if zs.is_empty() { 0.0 } else { ok as f64 / zs.len() as f64 };
    let summary = ComparisonSummary {
        band,
        points_in_band: in_band.len(),
        max_abs_z,
        band_pass_fraction,
        pass: !zs.is_empty() && band_pass_fraction >= PASS_FRACTION,
    };
    Ok(ComparisonReport { rows, summary })
}

/// `lo:hi` with either side optional.
pub fn parse_band(s: &str) -> Result<(f64, f64)> {
    let bad = || CliError::validation("--band", format!("expected lo:hi, got `{s}`"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo = if a.trim().is_empty() { f64::NEG_INFINITY } else { a.trim().parse().map_err(|_| bad())? };
    let hi = if b.trim().is_empty() { f64::INFINITY } else { b.trim().parse().map_err(|_| bad())? };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_curves_pass() {
        let w: Vec<f64> = (1..=50).map(f64::from).collect();
        let v: Vec<f64> = w.iter().map(|x| (x / 10.0).sin()).collect();
        let e = vec![0.1; 50];
        let r = compare_curves((&w, &v, &e), (&w, &v), None).unwrap();
        assert!(r.rows.iter().all(|r| r.z_score == Some(0.0)));
        assert!(r.summary.pass);
        assert_eq!(r.summary.max_abs_z, 0.0);
    }

    #[test]
    fn interpolation_and_failures() {
        let w = [1.0, 2.0, 3.0];
        let r = compare_curves((&[1.5, 2.5, 9.0], &[1.5, 3.0, 0.0], &[0.1, 0.1, 0.1]), (&w, &[1.0, 2.0, 3.0]), None).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!((r.rows[1].z_score.unwrap() - 5.0).abs() < 1e-9);
        assert!(!r.summary.pass);
        assert!(matches!(compare_curves((&[10.0], &[0.0], &[1.0]), (&w, &w), None), Err(CliError::DisjointGrids)));
    }

    #[test]
    fn bands() {
        assert_eq!(parse_band("0.1:2").unwrap(), (0.1, 2.0));
        assert_eq!(parse_band(":2").unwrap().0, f64::NEG_INFINITY);
        assert!(parse_band("3:1").is_err());
        assert!(parse_band("x").is_err());
        let w: Vec<f64> = (0..100).map(|k| f64::from(k) * 0.1).collect();
        let v: Vec<f64> = w.iter().map(|x| -(x - 2.0) * (x - 2.0)).collect();
        let (lo, hi) = default_band(&w[5..], &w, &v);
        assert_eq!(lo, 0.5);
        assert!((hi - 4.0).abs() < 1e-9);
    }
}
