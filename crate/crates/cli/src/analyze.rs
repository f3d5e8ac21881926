//! `analyze`: spectra, pair correlation and count variance of event files.

use std::path::{Path, PathBuf};

use quietlight::pointproc::{correlation_estimate, count_variance_curve, periodogram, EventSeries, SpectrumEstimate};
use serde_json::Value;

use crate::io::{expand_glob, read_text, write_csv, Table};
use crate::scenario::Analysis;
use crate::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AnalyzeOptions {
    pub spectrum: bool,
    pub gtau: bool,
    pub count_var: bool,
    pub n_max: Option<usize>,
    pub tau_max: Option<f64>,
    pub bins: Option<usize>,
    pub windows: Vec<f64>,
    /// Output directory; defaults to the directory of the first input.
    pub out: Option<PathBuf>,
}

pub fn load_series(paths: &[PathBuf]) -> Result<Vec<EventSeries>> {
    paths
        .iter()
        .map(|p| EventSeries::from_text(&read_text(p)?).map_err(|e| CliError::Parse { path: p.clone(), msg: e.to_string() }))
        .collect()
}

/// Analysis settings and time unit from a manifest next to the inputs.
fn manifest_defaults(dir: &Path) -> (Analysis, String) {
    let mut analysis = Analysis::default();
    let mut unit = "t".to_string();
    let Ok(text) = std::fs::read_to_string(dir.join("manifest.json")) else { return (analysis, unit) };
    let Ok(v) = serde_json::from_str::<Value>(&text) else { return (analysis, unit) };
    if let Some(u) = v.pointer("/units/time").and_then(Value::as_str) {
        unit = u.to_string();
    }
    if let Some(a) = v.pointer("/scenario/analysis") {
        if let Some(n) = a.get("n_max").and_then(Value::as_u64) {
            analysis.n_max = n as usize;
        }
        analysis.tau_max = a.get("tau_max").and_then(Value::as_f64);
        if let Some(b) = a.get("bins").and_then(Value::as_u64) {
            analysis.bins = b as usize;
        }
        if let Some(w) = a.get("window").and_then(Value::as_array) {
            analysis.window = w.iter().filter_map(Value::as_f64).collect();
        }
    }
    (analysis, unit)
}

/// Spectrum rows `omega,value,stderr`.
#[must_use]
pub fn spectrum_rows(spec: &SpectrumEstimate) -> Vec<Vec<f64>> {
    (0..spec.omegas.len()).map(|k| vec![spec.omegas[k], spec.values[k], spec.stderr[k]]).collect()
}

/// Rows `omega, S/D − 1, stderr/D`: the dimensionless D·N(Ω).
#[must_use]
pub fn relative_rows(spec: &SpectrumEstimate) -> Vec<Vec<f64>> {
    let (s, se) = spec.normalized();
    (0..spec.omegas.len()).map(|k| vec![spec.omegas[k], s[k] - 1.0, se[k]]).collect()
}

/// Reads a spectrum CSV back into (omega, value, stderr) columns.
pub fn read_spectrum(path: &Path) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let t = Table::read(path)?;
    Ok((t.column("omega", path)?, t.column("value", path)?, t.column("stderr", path)?))
}

pub fn cmd_analyze(pattern: &str, opts: &AnalyzeOptions) -> Result<Vec<PathBuf>> {
    let paths = expand_glob(pattern)?;
    let series = load_series(&paths)?;
    let in_dir = paths[0].parent().map(Path::to_path_buf).unwrap_or_default();
    let (defaults, unit) = manifest_defaults(&in_dir);
    let out = opts.out.clone().unwrap_or(in_dir);
    let any = opts.spectrum || opts.gtau || opts.count_var;
    let mut written = Vec::new();

    if opts.spectrum || !any {
        let n_max = opts.n_max.unwrap_or(defaults.n_max);
        let spec = periodogram(&series, n_max)?;
        let marked = series.iter().any(EventSeries::is_marked);
        let vunit = if marked { format!("mark^2/{unit}") } else { format!("1/{unit}") };
        let p = out.join("spectrum.csv");
        let units = format!(
            "omega [rad/{unit}], value = S(omega) [{vunit}], stderr [{vunit}]; runs={} rate={}",
            spec.n_runs, spec.rate
        );
        write_csv(&p, &units, &["omega", "value", "stderr"], &spectrum_rows(&spec))?;
        written.push(p);
        let p = out.join("relative_noise.csv");
        write_csv(
            &p,
            &format!("omega [rad/{unit}], value = S/D - 1 [dimensionless], stderr [dimensionless]"),
            &["omega", "value", "stderr"],
            &relative_rows(&spec),
        )?;
        written.push(p);
    }

    let t_min = series.iter().map(EventSeries::duration).fold(f64::INFINITY, f64::min);
    if opts.gtau {
        let tau_max = opts.tau_max.or(defaults.tau_max).unwrap_or(t_min / 20.0);
        let bins = opts.bins.unwrap_or(defaults.bins);
        let c = correlation_estimate(&series, tau_max, bins)?;
        let rows: Vec<Vec<f64>> = (0..c.taus.len()).map(|k| vec![c.taus[k], c.g[k], c.stderr[k]]).collect();
        let p = out.join("gtau.csv");
        write_csv(&p, &format!("tau [{unit}], value = g(tau) [dimensionless], stderr"), &["tau", "value", "stderr"], &rows)?;
        written.push(p);
    }

    if opts.count_var {
        let mut windows = if opts.windows.is_empty() { defaults.window.clone() } else { opts.windows.clone() };
        if windows.is_empty() {
            windows = (0..13).map(|k| t_min * 10f64.powf(-4.0 + 0.25 * f64::from(k))).collect();
        }
        let v = count_variance_curve(&series, &windows)?;
        let rows: Vec<Vec<f64>> = windows.iter().zip(&v).map(|(w, x)| vec![*w, *x]).collect();
        let p = out.join("count_var.csv");
        write_csv(&p, &format!("window [{unit}], value = var/mean - 1 [dimensionless]"), &["window", "value"], &rows)?;
        written.push(p);
    }
    Ok(written)
}
