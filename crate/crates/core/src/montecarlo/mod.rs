//! Seeded event-driven simulators: pendulum clock, isolated atoms and
//! cavity, level-resolved laser diode with regular pumping, and the
//! four-level atomic laser.
//!
//! Each run draws from its own ChaCha8 stream (seed, run index), so any run
//! can be reproduced alone and runs may execute in any order.

mod cavity;
mod diode;
mod fourlevel;
mod pendulum;
mod scheduler;

pub use cavity::{run_isolated_cavity, CavityConfig, CAVITY_CHANNELS};
pub use diode::{run_diode, DiodeConfig, DIODE_CHANNELS};
pub use fourlevel::{run_four_level, FourLevelConfig, FOUR_LEVEL_CHANNELS};
pub use pendulum::{run_pendulum, PendulumConfig};
pub use scheduler::{next_event_scheduler, run_rng, EventKind, Next, ScheduledEvent, Scheduler, Ticks};

use crate::pointproc::EventSeries;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("negative rate {rate} on channel {channel}")]
    NegativeRate { channel: usize, rate: f64 },
    #[error("infeasible configuration: {0}")]
    ConfigInfeasible(String),
}

/// Time-weighted mean and variance of the quantum count (or pendulum energy).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MStats {
    pub mean: f64,
    pub var: f64,
}

impl MStats {
    #[must_use]
    pub fn fano(&self) -> f64 {
        self.var / self.mean
    }
}

/// Output of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub detection: EventSeries,
    pub m_stats: MStats,
    /// Per-channel event counts over the recorded window, in the model's channel order.
    pub tallies: Vec<(&'static str, u64)>,
    /// Time-averaged level occupancies, when the model tracks levels.
    pub occupancy: Vec<f64>,
    /// Quantum count sampled at a fixed interval, when requested.
    pub m_samples: Vec<u64>,
}

impl RunResult {
    #[must_use]
    pub fn tally(&self, name: &str) -> Option<u64> {
        self.tallies.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub runs: Vec<RunResult>,
}

impl SimResult {
    #[must_use]
    pub fn detections(&self) -> Vec<EventSeries> {
        self.runs.iter().map(|r| r.detection.clone()).collect()
    }

    /// Channel totals summed over runs.
    #[must_use]
    pub fn total_tallies(&self) -> Vec<(&'static str, u64)> {
        let mut out: Vec<(&'static str, u64)> = self.runs.first().map(|r| r.tallies.clone()).unwrap_or_default();
        for r in self.runs.iter().skip(1) {
            for (o, (_, c)) in out.iter_mut().zip(&r.tallies) {
                o.1 += c;
            }
        }
        out
    }

    /// Mean over runs of the per-run m statistics, with the variance pooled
    /// about the grand mean.
    #[must_use]
    pub fn pooled_m_stats(&self) -> MStats {
        let k = self.runs.len() as f64;
        let mean = self.runs.iter().map(|r| r.m_stats.mean).sum::<f64>() / k;
        let var = self.runs.iter().map(|r| r.m_stats.var + (r.m_stats.mean - mean).powi(2)).sum::<f64>() / k;
        MStats { mean, var }
    }
}

/// Time-weighted accumulator for m.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct MAccumulator {
    s0: f64,
    s1: f64,
    s2: f64,
}

impl MAccumulator {
    pub(crate) fn add(&mut self, m: f64, dt: f64) {
        self.s0 += dt;
        self.s1 += m * dt;
        self.s2 += m * m * dt;
    }

    pub(crate) fn stats(&self) -> MStats {
        if self.s0 == 0.0 {
            return MStats::default();
        }
        let mean = self.s1 / self.s0;
        MStats { mean, var: (self.s2 / self.s0 - mean * mean).max(0.0) }
    }
}

/// Run `f(run_index)` for every run, in parallel, keeping run order.
pub(crate) fn run_all<F>(runs: usize, f: F) -> Result<SimResult, McError>
where
    F: Fn(u64) -> Result<RunResult, McError> + Sync + Send,
{
    if runs == 0 {
        return Err(McError::ConfigInfeasible("runs must be at least 1".into()));
    }
    let runs = (0..runs as u64).into_par_iter().map(&f).collect::<Result<Vec<_>, _>>()?;
    Ok(SimResult { runs })
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<(), McError> {
    if v > 0.0 && !v.is_nan() {
        Ok(())
    } else {
        Err(McError::ConfigInfeasible(format!("{name} = {v} must be positive")))
    }
}
