use super::{run_all, run_rng, EventKind, MAccumulator, McError, RunResult, Scheduler, SimResult, Ticks};
use crate::pointproc::EventSeries;

/// N two-level atoms sharing a lossless single-mode cavity.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig {
    pub n_atoms: u64,
    /// Initial excited atoms.
    pub n0: u64,
    /// Initial light quanta.
    pub m0: u64,
    pub duration: f64,
    /// Time discarded before recording.
    pub warmup: f64,
    /// Interval between recorded m samples; 0 disables sampling.
    pub sample_interval: f64,
    pub runs: usize,
    pub seed: u64,
}

impl CavityConfig {
    #[must_use]
    pub fn new(n_atoms: u64, duration: f64, runs: usize, seed: u64) -> Self {
        Self { n_atoms, n0: n_atoms, m0: 0, duration, warmup: 0.0, sample_interval: 0.0, runs, seed }
    }
}

pub const CAVITY_CHANNELS: [&str; 2] = ["emission", "absorption"];

/// Birth-death: emission at n(m + 1), absorption at (N − n)m; n + m is conserved.
/// The output series holds the emission times.
pub fn run_isolated_cavity(cfg: &CavityConfig) -> Result<SimResult, McError> {
    if cfg.n0 > cfg.n_atoms {
        return Err(McError::ConfigInfeasible(format!("n0 = {} exceeds N = {}", cfg.n0, cfg.n_atoms)));
    }
    if !(cfg.duration > 0.0 && cfg.warmup >= 0.0 && cfg.sample_interval >= 0.0) {
        return Err(McError::ConfigInfeasible("duration must be positive, warmup and sample interval non-negative".into()));
    }
    let big_n = cfg.n_atoms;
    run_all(cfg.runs, |run| {
        let ticks = if cfg.sample_interval > 0.0 {
            Ticks::Periodic { period: cfg.sample_interval, phase: cfg.warmup }
        } else {
            Ticks::None
        };
        let mut s = Scheduler::new(run_rng(cfg.seed, run), ticks, cfg.warmup);
        let (mut n, mut m) = (cfg.n0, cfg.m0);
        let mut recording = cfg.warmup == 0.0;
        let t_end = cfg.warmup + cfg.duration;
        if recording {
            s.set_horizon(t_end);
        }
        let mut acc = MAccumulator::default();
        let mut tallies = [0u64; 2];
        let mut times = Vec::new();
        let mut samples = Vec::new();
        let mut last = 0.0;
        loop {
            let rates = [(n * (m + 1)) as f64, ((big_n - n) * m) as f64];
            let ev = s.next(&rates)?;
            let t = s.time();
            if recording {
                acc.add(m as f64, t - last);
            }
            last = t;
            match ev {
                EventKind::Channel(0) => {
                    n -= 1;
                    m += 1;
                    if recording {
                        tallies[0] += 1;
                        times.push(t - cfg.warmup);
                    }
                }
                EventKind::Channel(_) => {
                    n += 1;
                    m -= 1;
                    if recording {
                        tallies[1] += 1;
                    }
                }
                EventKind::Tick(_) => {
                    if recording {
                        samples.push(m);
                    }
                }
                EventKind::Horizon => {
                    if recording {
                        break;
                    }
                    recording = true;
                    s.set_horizon(t_end);
                }
            }
            debug_assert_eq!(n + m, cfg.n0 + cfg.m0);
        }
        let detection = EventSeries::new(times, cfg.duration, None).map_err(|e| McError::ConfigInfeasible(e.to_string()))?;
        Ok(RunResult {
            detection,
            m_stats: acc.stats(),
            tallies: CAVITY_CHANNELS.iter().copied().zip(tallies).collect(),
            occupancy: Vec::new(),
            m_samples: samples,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_atoms_empty_half_the_time() {
        let cfg = CavityConfig { n0: 2, sample_interval: 0.7, warmup: 5.0, ..CavityConfig::new(2, 4000.0, 2, 8) };
        let r = run_isolated_cavity(&cfg).unwrap();
        let s: Vec<u64> = r.runs.iter().flat_map(|x| x.m_samples.clone()).collect();
        let p0 = s.iter().filter(|&&m| m == 0).count() as f64 / s.len() as f64;
        assert!((p0 - 0.25).abs() < 0.02, "p(0) = {p0}");
        assert!(s.iter().all(|&m| m <= 2));
    }

    #[test]
    fn fano_one_half() {
        let mut cfg = CavityConfig::new(100, 200.0, 2, 4);
        cfg.warmup = 2.0;
        let r = run_isolated_cavity(&cfg).unwrap();
        let st = r.pooled_m_stats();
        assert!((st.mean - 50.0).abs() < 1.0);
        assert!((st.fano() - 0.5).abs() < 0.03, "{}", st.fano());
        assert_eq!(run_isolated_cavity(&cfg).unwrap(), r);
        assert!(run_isolated_cavity(&CavityConfig { n0: 101, ..cfg }).is_err());
    }
}
