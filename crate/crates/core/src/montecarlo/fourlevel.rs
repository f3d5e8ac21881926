use super::{check_positive, run_all, run_rng, EventKind, MAccumulator, McError, RunResult, Scheduler, SimResult, Ticks};
use crate::pointproc::EventSeries;

/// N four-level atoms pumped 0↔3 at equal probability, lasing on 2→1.
#[derive(Debug, Clone, PartialEq)]
pub struct FourLevelConfig {
    pub n_atoms: u64,
    /// Pump probability per atom per unit time, each way between 0 and 3.
    pub pump: f64,
    /// Decay time 3 → 2.
    pub tau_u: f64,
    /// Decay time 1 → 0.
    pub tau_d: f64,
    pub tau_p: f64,
    pub duration: f64,
    pub warmup: f64,
    /// Light quanta at t = 0 (all atoms start in level 0).
    pub m0: u64,
    pub runs: usize,
    pub seed: u64,
}

impl Default for FourLevelConfig {
    fn default() -> Self {
        Self {
            n_atoms: 200,
            pump: 1.0,
            tau_u: 0.05,
            tau_d: 0.01,
            tau_p: 2.0,
            duration: 200.0,
            warmup: 20.0,
            m0: 0,
            runs: 20,
            seed: 1,
        }
    }
}

pub const FOUR_LEVEL_CHANNELS: [&str; 7] =
    ["pump_up", "pump_down", "decay_32", "decay_10", "stimulated_abs", "stimulated_emi", "detection"];

/// Level populations evolve by pumping 0↔3, decays 3→2 and 1→0,
/// stimulated 1→2 at m and 2→1 at m + 1 per atom, and detection at m/τ_p.
pub fn run_four_level(cfg: &FourLevelConfig) -> Result<SimResult, McError> {
    if !(cfg.pump >= 0.0) {
        return Err(McError::ConfigInfeasible(format!("pump = {} must be non-negative", cfg.pump)));
    }
    check_positive("tau_u", cfg.tau_u)?;
    check_positive("tau_d", cfg.tau_d)?;
    check_positive("tau_p", cfg.tau_p)?;
    check_positive("duration", cfg.duration)?;
    if !(cfg.warmup >= 0.0) || cfg.n_atoms == 0 {
        return Err(McError::ConfigInfeasible("warmup must be non-negative and N positive".into()));
    }
    let t_end = cfg.warmup + cfg.duration;
    run_all(cfg.runs, |run| {
        let mut s = Scheduler::new(run_rng(cfg.seed, run), Ticks::None, cfg.warmup);
        let mut pop = [cfg.n_atoms, 0, 0, 0];
        let mut m = cfg.m0;
        let mut recording = cfg.warmup == 0.0;
        if recording {
            s.set_horizon(t_end);
        }
        let mut tallies = [0u64; 7];
        let mut times = Vec::new();
        let mut acc = MAccumulator::default();
        let mut last = 0.0;
        loop {
            let mf = m as f64;
            let rates = [
                cfg.pump * pop[0] as f64,
                cfg.pump * pop[3] as f64,
                pop[3] as f64 / cfg.tau_u,
                pop[1] as f64 / cfg.tau_d,
                mf * pop[1] as f64,
                (mf + 1.0) * pop[2] as f64,
                mf / cfg.tau_p,
            ];
            let ev = s.next(&rates)?;
            let t = s.time();
            if recording {
                acc.add(mf, t - last);
            }
            last = t;
            let ch = match ev {
                EventKind::Channel(ch) => ch,
                EventKind::Tick(_) => continue,
                EventKind::Horizon => {
                    if recording {
                        break;
                    }
                    recording = true;
                    s.set_horizon(t_end);
                    continue;
                }
            };
            let (from, to) = [(0, 3), (3, 0), (3, 2), (1, 0), (1, 2), (2, 1), (0, 0)][ch];
            match ch {
                4 => m -= 1,
                5 => m += 1,
                6 => {
                    m -= 1;
                    if recording {
                        times.push(t - cfg.warmup);
                    }
                }
                _ => {}
            }
            if ch != 6 {
                pop[from] -= 1;
                pop[to] += 1;
            }
            if recording {
                tallies[ch] += 1;
            }
            debug_assert_eq!(pop.iter().sum::<u64>(), cfg.n_atoms);
        }
        let detection = EventSeries::new(times, cfg.duration, None).map_err(|e| McError::ConfigInfeasible(e.to_string()))?;
        Ok(RunResult {
            detection,
            m_stats: acc.stats(),
            tallies: FOUR_LEVEL_CHANNELS.iter().copied().zip(tallies).collect(),
            occupancy: Vec::new(),
            m_samples: Vec::new(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flow_balance() {
        let cfg = FourLevelConfig { duration: 50.0, warmup: 10.0, runs: 2, ..FourLevelConfig::default() };
        let r = run_four_level(&cfg).unwrap();
        for run in &r.runs {
            let det = run.tally("detection").unwrap() as f64;
            let net = run.tally("stimulated_emi").unwrap() as f64 - run.tally("stimulated_abs").unwrap() as f64;
            // the tally difference is the change of m over the window
            assert!((det - net).abs() < 3.0 * run.m_stats.var.sqrt() + 3.0, "{det} vs {net}");
            assert!(run.m_stats.mean > 10.0);
        }
        assert_eq!(run_four_level(&cfg).unwrap(), r);
    }

    #[test]
    fn dies_without_pump() {
        let cfg = FourLevelConfig { pump: 0.0, m0: 40, duration: 100.0, warmup: 0.0, runs: 1, ..FourLevelConfig::default() };
        let r = run_four_level(&cfg).unwrap();
        let t = r.runs[0].detection.times();
        assert!(t.len() <= 40);
        assert!(t.last().is_none_or(|&x| x < 60.0));
        assert!(run_four_level(&FourLevelConfig { tau_u: 0.0, ..cfg }).is_err());
    }
}
