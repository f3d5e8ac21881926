use super::{check_positive, run_all, run_rng, MAccumulator, McError, Next, RunResult, Scheduler, SimResult, Ticks};
use crate::pointproc::EventSeries;

/// Laser diode with B evenly spaced levels per band and one electron per level.
#[derive(Debug, Clone, PartialEq)]
pub struct DiodeConfig {
    /// Levels per band; also the electron count. At most 128.
    pub b: usize,
    /// Forbidden levels between the bands (enters only the photon energy).
    pub gap: usize,
    /// Lattice temperature in K, recorded for reporting.
    pub temperature: f64,
    /// Boltzmann factor e^{−ε/T}.
    pub q: f64,
    /// Thermalization probability per electron per ns.
    pub p_therm: f64,
    /// Pump period Δt in ns; `None` switches pumping off.
    pub pump_period: Option<f64>,
    /// Resonator lifetime in ns; infinite for a closed cavity.
    pub tau_p: f64,
    /// Recorded duration in ns.
    pub duration: f64,
    /// Discarded start-up time in ns.
    pub transient: f64,
    /// Electrons moved from the top of the VB to the bottom of the CB at t = 0.
    pub initial_cb: usize,
    pub runs: usize,
    pub seed: u64,
}

impl Default for DiodeConfig {
    fn default() -> Self {
        Self {
            b: 100,
            gap: 0,
            temperature: 100.0,
            q: 0.891,
            p_therm: 25_000.0,
            pump_period: Some(0.2),
            tau_p: 2.0,
            duration: 1000.0,
            transient: 50.0,
            initial_cb: 0,
            runs: 20,
            seed: 1,
        }
    }
}

impl DiodeConfig {
    /// ε/T = −ln q.
    #[must_use]
    pub fn eps_over_t(&self) -> f64 {
        -self.q.ln()
    }

    /// Pump rate J = 1/Δt (0 without pumping).
    #[must_use]
    pub fn pump_rate(&self) -> f64 {
        self.pump_period.map_or(0.0, |dt| 1.0 / dt)
    }

    /// Lasing level, counted from the bottom of each band (0-based).
    #[must_use]
    pub fn lasing_level(&self) -> usize {
        self.b / 2 - 1
    }

    pub fn validate(&self) -> Result<(), McError> {
        if !(2..=128).contains(&self.b) {
            return Err(McError::ConfigInfeasible(format!("B = {} must lie in 2..=128", self.b)));
        }
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(McError::ConfigInfeasible(format!("q = {} must lie in (0, 1)", self.q)));
        }
        check_positive("p_therm", self.p_therm)?;
        check_positive("tau_p", self.tau_p)?;
        check_positive("duration", self.duration)?;
        if let Some(dt) = self.pump_period {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(McError::ConfigInfeasible(format!("pump period {dt} must be positive")));
            }
        }
        if !(self.transient >= 0.0) {
            return Err(McError::ConfigInfeasible("transient must be non-negative".into()));
        }
        if self.initial_cb > self.b {
            return Err(McError::ConfigInfeasible("initial_cb exceeds B".into()));
        }
        Ok(())
    }
}

pub const DIODE_CHANNELS: [&str; 9] = [
    "pumping",
    "detection",
    "stimulated_abs",
    "stimulated_emi",
    "vb_cooling",
    "vb_heating",
    "cb_cooling",
    "cb_heating",
    "pump_fallback",
];

const PUMP: usize = 0;
const DETECT: usize = 1;
const ABS: usize = 2;
const EMI: usize = 3;
const VB_COOL: usize = 4;
const VB_HEAT: usize = 5;
const CB_COOL: usize = 6;
const CB_HEAT: usize = 7;
const FALLBACK: usize = 8;

/// Index of the k-th set bit (k < popcount).
#[inline]
fn select_bit(mut mask: u128, k: u32) -> u32 {
    for _ in 0..k {
        mask &= mask - 1;
    }
    mask.trailing_zeros()
}

/// Electrons that may move down (level below empty, not the band bottom).
#[inline]
fn down_movers(o: u128) -> u128 {
    o & !(o << 1) & !1
}

/// Electrons that may move up (level above empty, not the band top).
#[inline]
fn up_movers(o: u128, full: u128) -> u128 {
    o & !(o >> 1) & (full >> 1)
}

struct Occupancy {
    recording: bool,
    since: Vec<f64>,
    acc: Vec<f64>,
}

impl Occupancy {
    fn toggled(&mut self, level: usize, now_occupied: bool, t: f64) {
        if !self.recording {
            return;
        }
        if now_occupied {
            self.since[level] = t;
        } else {
            self.acc[level] += t - self.since[level];
        }
    }
}

/// Exact next-event simulation of the diode: thermal hops within each band,
/// stimulated transitions between the lasing levels, detection at m/τ_p and
/// a deterministic pump every Δt.
///
/// Pump ticks sit half a period off the grid so that any recorded window of
/// length kΔt contains exactly k of them. The pump takes the lowest occupied
/// VB level to the highest empty CB level, which are the band edges except
/// in rare fallback cases. Occupancies are reported as 2B values, VB first.
pub fn run_diode(cfg: &DiodeConfig) -> Result<SimResult, McError> {
    cfg.validate()?;
    let b = cfg.b;
    let full: u128 = if b == 128 { u128::MAX } else { (1u128 << b) - 1 };
    let lase = cfg.lasing_level();
    let lbit = 1u128 << lase;
    let p = cfg.p_therm;
    let pq = cfg.p_therm * cfg.q;
    let inv_tau = if cfg.tau_p.is_finite() { 1.0 / cfg.tau_p } else { 0.0 };
    let t_end = cfg.transient + cfg.duration;
    run_all(cfg.runs, |run| {
        let ticks = match cfg.pump_period {
            Some(dt) => Ticks::Periodic { period: dt, phase: 0.5 * dt },
            None => Ticks::None,
        };
        let mut s = Scheduler::new(run_rng(cfg.seed, run), ticks, cfg.transient);
        let k = cfg.initial_cb;
        let top_k = full & !full.checked_shr(k as u32).unwrap_or(0);
        let mut v: u128 = full & !top_k;
        let mut c: u128 = full.checked_shr((b - k) as u32).unwrap_or(0);
        let mut m: u64 = 0;
        let mut tallies = [0u64; 9];
        let mut times = Vec::with_capacity((cfg.duration * cfg.pump_rate().max(1.0) * 1.2) as usize);
        let mut acc = MAccumulator::default();
        let mut occ = Occupancy { recording: false, since: vec![0.0; 2 * b], acc: vec![0.0; 2 * b] };
        let mut recording = false;
        let mut last = 0.0;
        let start_recording = |occ: &mut Occupancy, v: u128, c: u128, t: f64| {
            occ.recording = true;
            for i in 0..b {
                if v >> i & 1 == 1 {
                    occ.since[i] = t;
                }
                if c >> i & 1 == 1 {
                    occ.since[b + i] = t;
                }
            }
        };
        if cfg.transient == 0.0 {
            recording = true;
            start_recording(&mut occ, v, c, 0.0);
            s.set_horizon(t_end);
        }
        loop {
            let vd = down_movers(v);
            let vu = up_movers(v, full);
            let cd = down_movers(c);
            let cu = up_movers(c, full);
            let (nvd, nvu, ncd, ncu) = (vd.count_ones(), vu.count_ones(), cd.count_ones(), cu.count_ones());
            let r_vd = p * nvd as f64;
            let r_cd = p * ncd as f64;
            let r_vu = pq * nvu as f64;
            let r_cu = pq * ncu as f64;
            let can_emit = c & lbit != 0 && v & lbit == 0;
            let can_abs = v & lbit != 0 && c & lbit == 0;
            let r_emi = if can_emit { (m + 1) as f64 } else { 0.0 };
            let r_abs = if can_abs { m as f64 } else { 0.0 };
            let r_det = m as f64 * inv_tau;
            let total = r_vd + r_cd + r_vu + r_cu + r_emi + r_abs + r_det;
            let next = s.next_with_total(total);
            let t = s.time();
            if recording {
                acc.add(m as f64, t - last);
            }
            last = t;
            let rec = recording as u64;
            match next {
                Next::Fire(mut x) => {
                    // thermal hops first: they dominate the event count
                    if x < r_vd {
                        let i = select_bit(vd, ((x / p) as u32).min(nvd - 1));
                        v ^= 0b11u128 << (i - 1);
                        occ.toggled(i as usize, false, t);
                        occ.toggled(i as usize - 1, true, t);
                        tallies[VB_COOL] += rec;
                        continue;
                    }
                    x -= r_vd;
                    if x < r_cd {
                        let i = select_bit(cd, ((x / p) as u32).min(ncd - 1));
                        c ^= 0b11u128 << (i - 1);
                        occ.toggled(b + i as usize, false, t);
                        occ.toggled(b + i as usize - 1, true, t);
                        tallies[CB_COOL] += rec;
                        continue;
                    }
                    x -= r_cd;
                    if x < r_vu {
                        let i = select_bit(vu, ((x / pq) as u32).min(nvu - 1));
                        v ^= 0b11u128 << i;
                        occ.toggled(i as usize, false, t);
                        occ.toggled(i as usize + 1, true, t);
                        tallies[VB_HEAT] += rec;
                        continue;
                    }
                    x -= r_vu;
                    if x < r_cu {
                        let i = select_bit(cu, ((x / pq) as u32).min(ncu - 1));
                        c ^= 0b11u128 << i;
                        occ.toggled(b + i as usize, false, t);
                        occ.toggled(b + i as usize + 1, true, t);
                        tallies[CB_HEAT] += rec;
                        continue;
                    }
                    x -= r_cu;
                    if x < r_emi {
                        c ^= lbit;
                        v ^= lbit;
                        m += 1;
                        occ.toggled(b + lase, false, t);
                        occ.toggled(lase, true, t);
                        tallies[EMI] += rec;
                    } else if x < r_emi + r_abs {
                        c ^= lbit;
                        v ^= lbit;
                        m -= 1;
                        occ.toggled(lase, false, t);
                        occ.toggled(b + lase, true, t);
                        tallies[ABS] += rec;
                    } else if m > 0 && inv_tau > 0.0 {
                        m -= 1;
                        if recording {
                            times.push(t - cfg.transient);
                            tallies[DETECT] += 1;
                        }
                    }
                }
                Next::Tick(_) => {
                    let empty_c = !c & full;
                    if v == 0 || empty_c == 0 {
                        continue;
                    }
                    let from = v.trailing_zeros() as usize;
                    let to = 127 - empty_c.leading_zeros() as usize;
                    if from != 0 || to != b - 1 {
                        tallies[FALLBACK] += rec;
                    }
                    v ^= 1u128 << from;
                    c ^= 1u128 << to;
                    occ.toggled(from, false, t);
                    occ.toggled(b + to, true, t);
                    tallies[PUMP] += rec;
                }
                Next::Horizon => {
                    if recording {
                        break;
                    }
                    recording = true;
                    start_recording(&mut occ, v, c, t);
                    s.set_horizon(t_end);
                }
            }
        }
        debug_assert_eq!(v.count_ones() + c.count_ones(), b as u32);
        for i in 0..b {
            if v >> i & 1 == 1 {
                occ.acc[i] += t_end - occ.since[i];
            }
            if c >> i & 1 == 1 {
                occ.acc[b + i] += t_end - occ.since[b + i];
            }
        }
        let occupancy = occ.acc.iter().map(|a| a / cfg.duration).collect();
        let detection = EventSeries::new(times, cfg.duration, None).map_err(|e| McError::ConfigInfeasible(e.to_string()))?;
        Ok(RunResult {
            detection,
            m_stats: acc.stats(),
            tallies: DIODE_CHANNELS.iter().copied().zip(tallies).collect(),
            occupancy,
            m_samples: Vec::new(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statmech::fit_fermi_level;

    #[test]
    fn bit_helpers() {
        assert_eq!(select_bit(0b1011_0100, 0), 2);
        assert_eq!(select_bit(0b1011_0100, 2), 5);
        let full = (1u128 << 8) - 1;
        assert_eq!(down_movers(0b0000_1111), 0);
        assert_eq!(down_movers(0b0011_0110), 0b0001_0010);
        assert_eq!(up_movers(0b0000_1111, full), 0b0000_1000);
        assert_eq!(up_movers(0b1000_0000, full), 0);
    }

    fn small(p_therm: f64, runs: usize) -> DiodeConfig {
        DiodeConfig { p_therm, duration: 200.0, runs, seed: 17, ..DiodeConfig::default() }
    }

    #[test]
    fn short_run_balances() {
        let r = run_diode(&small(1000.0, 2)).unwrap();
        for run in &r.runs {
            assert_eq!(run.tally("pumping"), Some(1000));
            let det = run.tally("detection").unwrap() as i64;
            assert!((det - 1000).abs() < 40, "detections {det}");
            let net = run.tally("stimulated_emi").unwrap() as i64 - run.tally("stimulated_abs").unwrap() as i64;
            assert!((net - det).abs() < 40);
            let total: f64 = run.occupancy.iter().sum();
            assert!((total - 100.0).abs() < 1e-6);
            assert!((run.m_stats.mean - 10.0).abs() < 2.0);
        }
        assert_eq!(run_diode(&small(1000.0, 2)).unwrap(), r);
    }

    #[test]
    fn closed_system_thermalizes_to_fermi_dirac() {
        let cfg = DiodeConfig {
            pump_period: None,
            tau_p: f64::INFINITY,
            initial_cb: 40,
            duration: 20.0,
            transient: 5.0,
            runs: 1,
            ..DiodeConfig::default()
        };
        let r = run_diode(&cfg).unwrap();
        let occ = &r.runs[0].occupancy;
        let t = 1.0 / cfg.eps_over_t();
        let levels: Vec<f64> = (0..100).map(f64::from).collect();
        for band in [&occ[..100], &occ[100..]] {
            let (_, rms) = fit_fermi_level(&levels, band, t).unwrap();
            assert!(rms < 0.01, "rms {rms}");
        }
    }

    #[test]
    fn rejects_bad_config() {
        assert!(run_diode(&DiodeConfig { pump_period: Some(0.0), ..DiodeConfig::default() }).is_err());
        assert!(run_diode(&DiodeConfig { b: 200, ..DiodeConfig::default() }).is_err());
        assert!(run_diode(&DiodeConfig { q: 1.0, ..DiodeConfig::default() }).is_err());
    }
}
