use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::StatMechError;

/// B evenly spaced levels holding N_e single-spin electrons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSystem {
    pub b: usize,
    pub n_e: usize,
    pub epsilon: f64,
    pub t: f64,
}

impl LevelSystem {
    pub fn new(b: usize, n_e: usize, epsilon: f64, t: f64) -> Result<Self, StatMechError> {
        if n_e > b || !(epsilon > 0.0) {
            return Err(StatMechError::InvalidArgument("need N_e ≤ B and epsilon > 0".into()));
        }
        Ok(Self { b, n_e, epsilon, t })
    }

    /// Boltzmann factor e^{−ε/T}.
    #[must_use]
    pub fn q(&self) -> f64 {
        (-self.epsilon / self.t).exp()
    }
}

/// Microstate counts per level. Level 0 is the highest one filled at zero
/// energy; levels run from 1 − N_e up to r.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyTable {
    pub levels: Vec<i64>,
    pub counts: Vec<BigUint>,
    pub total: BigUint,
}

impl OccupancyTable {
    fn index(&self, level: i64) -> Option<usize> {
        let first = *self.levels.first()?;
        let i = usize::try_from(level - first).ok()?;
        (i < self.levels.len()).then_some(i)
    }

    /// Mean occupancy as an exact fraction over W(r). Levels outside the
    /// table are full (below) or empty (above).
    #[must_use]
    pub fn occupancy_exact(&self, level: i64) -> BigRational {
        match self.index(level) {
            Some(i) => BigRational::new(self.counts[i].clone().into(), self.total.clone().into()),
            None if self.levels.first().is_some_and(|&f| level < f) => BigRational::from_integer(1.into()),
            None => BigRational::zero(),
        }
    }

    #[must_use]
    pub fn occupancy(&self, level: i64) -> f64 {
        self.occupancy_exact(level).to_f64().unwrap_or(0.0)
    }
}

const MAX_ENUMERATED_ENERGY: usize = 70;

/// Average level occupancy over all W(r) ways of adding r quanta to N_e
/// electrons. Each microstate is a partition λ of r into at most N_e parts;
/// the electron i places down from the top (0-based) moves to level λ_i − i.
pub fn micro_canonical_occupancy(n_e: usize, r: usize) -> Result<OccupancyTable, StatMechError> {
    if n_e == 0 && r > 0 {
        return Err(StatMechError::InfeasibleEnergy { n_e, r });
    }
    if r > MAX_ENUMERATED_ENERGY {
        return Err(StatMechError::InvalidArgument(format!(
            "enumeration is limited to r ≤ {MAX_ENUMERATED_ENERGY}"
        )));
    }
    let first = 1 - n_e as i64;
    let levels: Vec<i64> = (first..=r as i64).collect();
    let mut counts = vec![0u64; levels.len()];
    let mut total = 0u64;
    let mut parts = Vec::with_capacity(n_e);
    fn walk(rest: usize, cap: usize, n_e: usize, parts: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if rest == 0 {
            visit(parts);
            return;
        }
        if parts.len() == n_e {
            return;
        }
        for v in (1..=cap.min(rest)).rev() {
            parts.push(v);
            walk(rest - v, v, n_e, parts, visit);
            parts.pop();
        }
    }
    walk(r, r, n_e, &mut parts, &mut |lambda: &[usize]| {
        total += 1;
        for i in 0..n_e {
            let lift = lambda.get(i).copied().unwrap_or(0) as i64;
            counts[(lift - i as i64 - first) as usize] += 1;
        }
    });
    Ok(OccupancyTable { levels, counts: counts.into_iter().map(BigUint::from).collect(), total: total.into() })
}

/// 1/(q^{μ−k} + 1) with q = e^{−1/T}.
#[must_use]
pub fn fermi_dirac(k: f64, mu: f64, t: f64) -> f64 {
    1.0 / (((k - mu) / t).exp() + 1.0)
}

/// Least-squares Fermi level at known temperature. Returns (μ, RMS residual).
pub fn fit_fermi_level(levels: &[f64], occupancy: &[f64], t: f64) -> Result<(f64, f64), StatMechError> {
    if levels.len() != occupancy.len() || levels.is_empty() || !(t > 0.0) {
        return Err(StatMechError::InvalidArgument("need matching nonempty data and T > 0".into()));
    }
    let sse = |mu: f64| -> f64 {
        levels.iter().zip(occupancy).map(|(k, o)| (o - fermi_dirac(*k, mu, t)).powi(2)).sum()
    };
    let lo = levels.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
    let hi = levels.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 1.0;
    let steps = 800;
    let h = (hi - lo) / steps as f64;
    let best = (0..=steps)
        .map(|i| lo + i as f64 * h)
        .min_by(|a, b| sse(*a).total_cmp(&sse(*b)))
        .expect("nonempty scan");
    let (mut a, mut b) = (best - h, best + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if sse(c) < sse(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let mu = 0.5 * (a + b);
    Ok((mu, (sse(mu) / levels.len() as f64).sqrt()))
}
