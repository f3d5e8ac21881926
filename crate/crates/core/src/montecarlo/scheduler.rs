use super::McError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

/// Generator for run `run` of a simulation seeded with `seed`.
#[must_use]
pub fn run_rng(seed: u64, run: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run);
    rng
}

/// Deterministic events interleaved with the stochastic ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Ticks {
    None,
    /// Ticks at phase + k·period, k = 0, 1, …
    Periodic { period: f64, phase: f64 },
    /// Explicit increasing tick times.
    List(Vec<f64>),
}

impl Ticks {
    fn at(&self, k: u64) -> f64 {
        match self {
            Ticks::None => f64::INFINITY,
            Ticks::Periodic { period, phase } => phase + k as f64 * period,
            Ticks::List(v) => v.get(k as usize).copied().unwrap_or(f64::INFINITY),
        }
    }
}

/// What happens next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Next {
    /// A stochastic event; the value is uniform on [0, total rate) for channel selection.
    Fire(f64),
    /// Deterministic tick number k.
    Tick(u64),
    /// Nothing before the horizon; the clock now reads the horizon.
    Horizon,
}

/// Exact next-event sampling with rates held constant between events.
#[derive(Debug, Clone)]
pub struct Scheduler {
    rng: ChaCha8Rng,
    t: f64,
    horizon: f64,
    ticks: Ticks,
    next_tick: u64,
    tick_at: f64,
}

impl Scheduler {
    #[must_use]
    pub fn new(rng: ChaCha8Rng, ticks: Ticks, horizon: f64) -> Self {
        let mut s = Self { rng, t: 0.0, horizon, ticks, next_tick: 0, tick_at: 0.0 };
        while s.ticks.at(s.next_tick) < 0.0 {
            s.next_tick += 1;
        }
        s.tick_at = s.ticks.at(s.next_tick);
        s
    }

    #[must_use]
    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn set_horizon(&mut self, horizon: f64) {
        self.horizon = horizon;
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Advance to the next event given the current total rate.
    pub fn next_with_total(&mut self, total: f64) -> Next {
        let tick = self.tick_at;
        let dt = if total > 0.0 {
            let e: f64 = self.rng.sample(Exp1);
            e / total
        } else {
            f64::INFINITY
        };
        let t_event = self.t + dt;
        if tick <= t_event && tick < self.horizon {
            self.t = tick;
            self.next_tick += 1;
            self.tick_at = self.ticks.at(self.next_tick);
            return Next::Tick(self.next_tick - 1);
        }
        if t_event >= self.horizon {
            self.t = self.horizon;
            return Next::Horizon;
        }
        // keep event times strictly increasing
        self.t = if t_event > self.t { t_event } else { self.t.next_up() };
        Next::Fire(self.rng.random::<f64>() * total)
    }

    /// Advance with an explicit rate table; `Fire` is resolved to a channel index.
    pub fn next(&mut self, rates: &[f64]) -> Result<EventKind, McError> {
        let mut total = 0.0;
        for (channel, &rate) in rates.iter().enumerate() {
            if !(rate >= 0.0) {
                return Err(McError::NegativeRate { channel, rate });
            }
            total += rate;
        }
        Ok(match self.next_with_total(total) {
            Next::Fire(mut x) => {
                let mut pick = rates.iter().rposition(|&r| r > 0.0).unwrap_or(0);
                for (i, &r) in rates.iter().enumerate() {
                    if x < r {
                        pick = i;
                        break;
                    }
                    x -= r;
                }
                EventKind::Channel(pick)
            }
            Next::Tick(k) => EventKind::Tick(k),
            Next::Horizon => EventKind::Horizon,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Channel(usize),
    Tick(u64),
    Horizon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduledEvent {
    pub time: f64,
    pub kind: EventKind,
}

/// Event stream for constant channel rates and a fixed tick list, up to `horizon`.
pub fn next_event_scheduler(
    channels: &[f64],
    ticks: &[f64],
    horizon: f64,
    seed: u64,
) -> Result<Vec<ScheduledEvent>, McError> {
    if let Some((channel, &rate)) = channels.iter().enumerate().find(|(_, r)| !(**r >= 0.0)) {
        return Err(McError::NegativeRate { channel, rate });
    }
    let mut s = Scheduler::new(run_rng(seed, 0), Ticks::List(ticks.to_vec()), horizon);
    let mut out = Vec::new();
    loop {
        match s.next(channels)? {
            EventKind::Horizon => return Ok(out),
            kind => out.push(ScheduledEvent { time: s.time(), kind }),
        }
    }
}
