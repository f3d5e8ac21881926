use super::{check_positive, run_all, run_rng, MAccumulator, McError, RunResult, SimResult};
use crate::pointproc::EventSeries;
use rand::Rng;

/// Pendulum clock with regular escapement and random molecular damping.
#[derive(Debug, Clone, PartialEq)]
pub struct PendulumConfig {
    pub w: f64,
    pub delta: f64,
    pub p: f64,
    pub periods: u64,
    pub runs: usize,
    pub seed: u64,
}

impl PendulumConfig {
    pub fn validate(&self) -> Result<(), McError> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(McError::ConfigInfeasible(format!("p = {} must lie in (0, 1)", self.p)));
        }
        check_positive("w", self.w)?;
        check_positive("delta", self.delta)?;
        if (self.periods as f64) < 10.0 / self.p {
            return Err(McError::ConfigInfeasible(format!("periods = {} is below 10/p", self.periods)));
        }
        Ok(())
    }
}

/// Marked series of energies released by picked-up molecules.
///
/// Each period the escapement adds δ; with probability p the energy then
/// drops to E/(1 + w) and the difference is emitted as a mark at time k.
pub fn run_pendulum(cfg: &PendulumConfig) -> Result<SimResult, McError> {
    cfg.validate()?;
    run_all(cfg.runs, |run| {
        let mut rng = run_rng(cfg.seed, run);
        let mut e = cfg.delta / (cfg.p * cfg.w);
        let mut times = Vec::new();
        let mut marks = Vec::new();
        let mut acc = MAccumulator::default();
        for k in 0..cfg.periods {
            e += cfg.delta;
            if rng.random::<f64>() < cfg.p {
                let after = e / (1.0 + cfg.w);
                times.push(k as f64);
                marks.push(e - after);
                e = after;
            }
            acc.add(e, 1.0);
        }
        let n = times.len() as u64;
        let detection = EventSeries::new(times, cfg.periods as f64, Some(marks))
            .map_err(|e| McError::ConfigInfeasible(e.to_string()))?;
        Ok(RunResult {
            detection,
            m_stats: acc.stats(),
            tallies: vec![("pickup", n), ("escapement", cfg.periods)],
            occupancy: Vec::new(),
            m_samples: Vec::new(),
        })
    })
}
