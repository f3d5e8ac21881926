//! Diode spectrum against the quasi-equilibrium theory.
//!
//! `cargo run --release --example diode_probe -- <p_therm> <runs>`

use quietlight::analytic::diode_relative_noise;
use quietlight::montecarlo::{run_diode, DiodeConfig};
use quietlight::pointproc::{first_upward_crossing, peak_location, periodogram};
use std::time::Instant;

const MHZ: f64 = 1e3 / (2.0 * std::f64::consts::PI);

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let p: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(25000.0);
    let runs: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);
    let cfg = DiodeConfig { p_therm: p, runs, ..DiodeConfig::default() };
    let t0 = Instant::now();
    let r = run_diode(&cfg).unwrap();
    eprintln!("elapsed {:?}", t0.elapsed());
    println!("{:?}", r.total_tallies());
    println!("m {:?}", r.pooled_m_stats());
    let spec = periodogram(&r.detections(), 300).unwrap().rebin(5);
    let (s, se) = spec.normalized();
    let j = cfg.pump_rate();
    let theory: Vec<f64> =
        spec.omegas.iter().map(|&w| 1.0 + diode_relative_noise(w, j, cfg.tau_p, cfg.eps_over_t()).unwrap()).collect();
    for k in 0..spec.omegas.len() {
        println!("{:6.1} MHz  S/D {:8.4} ± {:6.4}  theory {:8.4}", spec.omegas[k] * MHZ, s[k], se[k], theory[k]);
    }
    let cross = first_upward_crossing(&spec.omegas, &s, 1.0).map(|w| w * MHZ);
    let peak = peak_location(&spec.omegas, &s).map(|w| w * MHZ);
    println!("crossing {cross:?} MHz, peak {peak:?} MHz");
}
