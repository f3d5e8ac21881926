//! `simulate`: run a scenario and write one event file per run, channel
//! tallies and a manifest that is enough to repeat the run exactly.

use std::path::PathBuf;

use quietlight::montecarlo::{run_diode, run_four_level, run_isolated_cavity, run_pendulum, SimResult};
use serde_json::json;

use crate::io::{create_dir, write_atomic, write_csv};
use crate::scenario::{ModelConfig, Scenario};
use crate::{CliError, Result, VERSION};

/// Runs the model on a pool of `jobs` threads (all cores when `None`).
pub fn run_model(model: &ModelConfig, jobs: Option<usize>) -> Result<SimResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::validation("--jobs", e.to_string()))?;
    let r = pool.install(|| match model {
        ModelConfig::Pendulum(c) => run_pendulum(c),
        ModelConfig::Cavity(c) => run_isolated_cavity(c),
        ModelConfig::Diode(c) => run_diode(c),
        ModelConfig::FourLevel(c) => run_four_level(c),
    })?;
    Ok(r)
}

#[must_use]
pub fn event_file_name(run: usize) -> String {
    format!("run_{run}.events")
}

/// Writes the run files into `scenario.output` and returns their paths.
pub fn cmd_simulate(scenario: &Scenario, jobs: Option<usize>) -> Result<Vec<PathBuf>> {
    let result = run_model(&scenario.model, jobs)?;
    let dir = &scenario.output;
    create_dir(dir)?;
    let mut files = Vec::with_capacity(result.runs.len());
    for (k, run) in result.runs.iter().enumerate() {
        let p = dir.join(event_file_name(k));
        write_atomic(&p, run.detection.to_text().as_bytes())?;
        files.push(p);
    }
    let mut text = String::from("# events in the recorded window, summed over runs\nchannel,count\n");
    for (name, count) in result.total_tallies() {
        text.push_str(&format!("{name},{count}\n"));
    }
    let tallies = dir.join("tallies.csv");
    write_atomic(&tallies, text.as_bytes())?;
    files.push(tallies);

    if !result.runs.is_empty() && !result.runs[0].m_samples.is_empty() {
        let rows: Vec<Vec<f64>> = result
            .runs
            .iter()
            .enumerate()
            .flat_map(|(k, r)| r.m_samples.iter().map(move |&m| vec![k as f64, m as f64]))
            .collect();
        let p = dir.join("m_samples.csv");
        write_csv(&p, "quantum count m sampled at analysis ticks", &["run", "m"], &rows)?;
        files.push(p);
    }

    let per_run: Vec<_> = result
        .runs
        .iter()
        .enumerate()
        .map(|(k, r)| {
            json!({
                "file": event_file_name(k),
                "events": r.detection.len(),
                "m_mean": r.m_stats.mean,
                "m_var": r.m_stats.var,
                "tallies": r.tallies.iter().map(|(n, c)| (n.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            })
        })
        .collect();
    let unit = scenario.model.time_unit();
    let manifest = json!({
        "toolkit": "quietlight",
        "version": VERSION,
        "scenario": scenario.to_json(),
        "units": {"time": unit, "rate": format!("1/{unit}"), "omega": format!("rad/{unit}")},
        "runs": per_run,
    });
    let p = dir.join("manifest.json");
    let mut bytes = serde_json::to_vec_pretty(&manifest).unwrap_or_default();
    bytes.push(b'\n');
    write_atomic(&p, &bytes)?;
    files.push(p);
    Ok(files)
}
