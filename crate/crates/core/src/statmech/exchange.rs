use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StatMechError;

/// `n` weight-1 balls in `N` locations at altitude `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reservoir {
    pub big_n: u64,
    pub n: u64,
    pub e: f64,
}

impl Reservoir {
    pub fn new(big_n: u64, n: u64, e: f64) -> Result<Self, StatMechError> {
        if big_n == 0 {
            return Err(StatMechError::InvalidReservoir("N must be positive".into()));
        }
        if 2 * n >= big_n {
            return Err(StatMechError::InvalidReservoir(format!("need n < N/2, got n={n}, N={big_n}")));
        }
        if !e.is_finite() {
            return Err(StatMechError::InvalidReservoir(format!("altitude {e} is not finite")));
        }
        Ok(Self { big_n, n, e })
    }

    /// Force n/N, the chance that a random location holds a ball.
    #[must_use]
    pub fn force(&self) -> f64 {
        self.n as f64 / self.big_n as f64
    }
}

/// Per-cycle moments of the work and of the total entropy produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleStats {
    pub mean_work: f64,
    pub var_work: f64,
    pub efficiency: f64,
    pub mean_ds: f64,
    pub var_ds: f64,
    pub cycles: u64,
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Stirling correction ln k! − [k ln k − k + ½ ln 2πk], error below 1/(1680k⁷).
fn stirling_tail(x: f64) -> f64 {
    let x2 = x * x;
    1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x * x2 * x2)
}

/// ln C(N, n): exact integers for N ≤ 1000. Above, a direct log sum when
/// min(n, N−n) is small, otherwise Stirling arranged so the large
/// N ln N terms cancel analytically.
#[must_use]
pub fn reservoir_entropy(res: &Reservoir) -> f64 {
    if res.n == 0 {
        return 0.0;
    }
    if res.big_n <= 1000 {
        // C(1000, 500) ≈ 2.7e299 still fits in an f64
        return binomial(res.big_n, res.n).to_f64().expect("binomial below f64::MAX").ln();
    }
    let k = res.n.min(res.big_n - res.n);
    if k <= 256 {
        return (0..k).map(|i| ((res.big_n - i) as f64 / (i + 1) as f64).ln()).sum();
    }
    let (nn, n) = (res.big_n as f64, res.n as f64);
    let m = nn - n;
    -n * (n / nn).ln() - m * (-n / nn).ln_1p() + 0.5 * (nn / (2.0 * std::f64::consts::PI * n * m)).ln()
        + stirling_tail(nn)
        - stirling_tail(n)
        - stirling_tail(m)
}

/// S(n+1) − S(n) = ln((N − n)/(n + 1)) without forming either entropy.
#[must_use]
pub fn entropy_step(res: &Reservoir) -> f64 {
    ((res.big_n - res.n) as f64 / (res.n + 1) as f64).ln()
}

/// T = E / ln(N/n − 1).
pub fn reservoir_temperature(res: &Reservoir) -> Result<f64, StatMechError> {
    if res.n == 0 {
        return Err(StatMechError::DegenerateOccupancy);
    }
    Ok(res.e / (res.big_n as f64 / res.n as f64 - 1.0).ln())
}

fn log_ratio(l: f64, h: f64) -> f64 {
    ((1.0 / l - 1.0) / (1.0 / h - 1.0)).ln()
}

fn check_pair(low: &Reservoir, high: &Reservoir) -> Result<(), StatMechError> {
    if !(high.e > low.e) {
        return Err(StatMechError::InvalidArgument(format!(
            "need E_h > E_l, got {} and {}",
            high.e, low.e
        )));
    }
    if low.n == 0 || high.n == 0 {
        return Err(StatMechError::DegenerateOccupancy);
    }
    Ok(())
}

/// Exact per-cycle moments for one random exchange between two reservoirs.
pub fn cycle_step_stats(low: &Reservoir, high: &Reservoir) -> Result<CycleStats, StatMechError> {
    check_pair(low, high)?;
    let (l, h) = (low.force(), high.force());
    let de = high.e - low.e;
    let lr = log_ratio(l, h);
    let spread = h * (1.0 - h) + l * (1.0 - l);
    Ok(CycleStats {
        mean_work: de * (h - l),
        var_work: de * de * spread,
        efficiency: 1.0 - low.e / high.e,
        mean_ds: (h - l) * lr,
        var_ds: spread * lr * lr,
        cycles: 1,
    })
}

struct Moments {
    n: u64,
    s1: f64,
    s2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        self.s1 += x;
        self.s2 += x * x;
    }
    fn mean(&self) -> f64 {
        self.s1 / self.n as f64
    }
    fn var(&self) -> f64 {
        let n = self.n as f64;
        if self.n < 2 {
            return 0.0;
        }
        (self.s2 - self.s1 * self.s1 / n) / (n - 1.0)
    }
}

/// Monte Carlo over independent cycles: the reservoirs are reset after each
/// exchange, so every cycle sees the same forces.
pub fn simulate_exchange(
    low: &Reservoir,
    high: &Reservoir,
    cycles: u64,
    seed: u64,
) -> Result<CycleStats, StatMechError> {
    check_pair(low, high)?;
    if cycles == 0 {
        return Err(StatMechError::InvalidArgument("cycles must be at least 1".into()));
    }
    let (l, h) = (low.force(), high.force());
    let de = high.e - low.e;
    let lr = log_ratio(l, h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Moments { n: 0, s1: 0.0, s2: 0.0 };
    let mut s = Moments { n: 0, s1: 0.0, s2: 0.0 };
    for _ in 0..cycles {
        let falls = rng.random::<f64>() < h;
        let rises = rng.random::<f64>() < l;
        let k = match (falls, rises) {
            (true, false) => 1.0,
            (false, true) => -1.0,
            _ => 0.0,
        };
        w.push(k * de);
        s.push(k * lr);
    }
    Ok(CycleStats {
        mean_work: w.mean(),
        var_work: w.var(),
        efficiency: 1.0 - low.e / high.e,
        mean_ds: s.mean(),
        var_ds: s.var(),
        cycles,
    })
}

/// Cycles acting on persistent reservoir contents; h and l drift together
/// and the work per cycle decays. Entropy increments use exact differences
/// of ln C(N, n). Returns the stats and the final reservoirs.
pub fn simulate_exchange_evolving(
    low: &Reservoir,
    high: &Reservoir,
    cycles: u64,
    seed: u64,
) -> Result<(CycleStats, Reservoir, Reservoir), StatMechError> {
    check_pair(low, high)?;
    if cycles == 0 {
        return Err(StatMechError::InvalidArgument("cycles must be at least 1".into()));
    }
    let (mut lo, mut hi) = (*low, *high);
    let de = hi.e - lo.e;
    // S(n+1) − S(n) = ln((N−n)/(n+1))
    let up = entropy_step;
    let down = |r: &Reservoir| -((r.big_n - r.n + 1) as f64 / r.n as f64).ln();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Moments { n: 0, s1: 0.0, s2: 0.0 };
    let mut s = Moments { n: 0, s1: 0.0, s2: 0.0 };
    for _ in 0..cycles {
        let falls = rng.random::<f64>() < hi.force();
        let rises = rng.random::<f64>() < lo.force();
        match (falls, rises) {
            (true, false) if lo.n + 1 < lo.big_n => {
                s.push(up(&lo) + down(&hi));
                lo.n += 1;
                hi.n -= 1;
                w.push(de);
            }
            (false, true) if hi.n + 1 < hi.big_n => {
                s.push(down(&lo) + up(&hi));
                lo.n -= 1;
                hi.n += 1;
                w.push(-de);
            }
            _ => {
                s.push(0.0);
                w.push(0.0);
            }
        }
    }
    let stats = CycleStats {
        mean_work: w.mean(),
        var_work: w.var(),
        efficiency: 1.0 - lo.e / hi.e,
        mean_ds: s.mean(),
        var_ds: s.var(),
        cycles,
    };
    Ok((stats, lo, hi))
}
