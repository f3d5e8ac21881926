use super::StatMechError;
use crate::mathkit::quad;

/// Heat added to the low and high sides, work delivered and efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarnotResult {
    pub q_l: f64,
    pub q_h: f64,
    pub work: f64,
    pub efficiency: f64,
    /// β_l·Q_l + β_h·Q_h, which vanishes as m → ∞.
    pub entropy_balance: f64,
}

/// Discrete cycle over `m` low and `m` high sub-reservoirs with forces
/// f(βE). Reduced altitudes are geometric: the low side climbs from L to H
/// and the high side descends from H to L, so L₁ = H_m and H₁ = L_m.
///
/// `work` = −(Q_l + Q_h) is the energy delivered, positive for a
/// decreasing force law, and `efficiency` = work/(−Q_h).
pub fn carnot_cycle(
    f: &dyn Fn(f64) -> f64,
    beta_l: f64,
    beta_h: f64,
    big_l: f64,
    big_h: f64,
    m: usize,
) -> Result<CarnotResult, StatMechError> {
    if !(beta_l >= beta_h && beta_h > 0.0) {
        return Err(StatMechError::InvalidTemperatureOrder { beta_l, beta_h });
    }
    if !(big_h > big_l && big_l > 0.0) || m < 2 {
        return Err(StatMechError::InvalidArgument("need H > L > 0 and m ≥ 2".into()));
    }
    let ratio = big_h / big_l;
    let lows: Vec<f64> = (0..m).map(|i| big_l * ratio.powf(i as f64 / (m - 1) as f64)).collect();
    let highs: Vec<f64> = lows.iter().rev().copied().collect();
    let side = |xs: &[f64], entry: f64| {
        let mut v = xs[0] * f(entry);
        for i in 0..m - 1 {
            v += f(xs[i]) * (xs[i + 1] - xs[i]);
        }
        v - xs[m - 1] * f(xs[m - 1])
    };
    let bl_ql = side(&lows, highs[m - 1]);
    let bh_qh = side(&highs, lows[m - 1]);
    let q_l = bl_ql / beta_l;
    let q_h = bh_qh / beta_h;
    let work = -(q_l + q_h);
    Ok(CarnotResult {
        q_l,
        q_h,
        work,
        efficiency: if q_h != 0.0 { work / -q_h } else { 0.0 },
        entropy_balance: bl_ql + bh_qh,
    })
}

/// Continuum limit (T_h − T_l)(s(L) − s(H)) with s(x) = x f(x) − ∫ᴸˣ f,
/// oriented like `carnot_cycle::work`.
pub fn carnot_work_limit(
    f: &dyn Fn(f64) -> f64,
    t_l: f64,
    t_h: f64,
    big_l: f64,
    big_h: f64,
) -> Result<f64, StatMechError> {
    let integral = quad::integrate(f, big_l, big_h, 1e-13, 1e-12)
        .map_err(|e| StatMechError::InvalidArgument(e.to_string()))?;
    let s_l = big_l * f(big_l);
    let s_h = big_h * f(big_h) - integral;
    Ok((t_h - t_l) * (s_l - s_h))
}

/// U₂ = U₁·ω₂/ω₁ for a slow frequency change.
pub fn adiabatic_transform(u1: f64, omega1: f64, omega2: f64) -> Result<f64, StatMechError> {
    if !(omega1 > 0.0 && omega2 > 0.0) {
        return Err(StatMechError::InvalidArgument("frequencies must be positive".into()));
    }
    Ok(u1 * omega2 / omega1)
}

/// (ω/2)·coth(ω/2T) with ħ = 1; ω/2 at T = 0.
pub fn planck_energy(omega: f64, t: f64) -> Result<f64, StatMechError> {
    if !(omega > 0.0) || !(t >= 0.0) {
        return Err(StatMechError::InvalidArgument("need omega > 0 and T ≥ 0".into()));
    }
    if t == 0.0 {
        return Ok(omega / 2.0);
    }
    Ok(omega / 2.0 / (omega / (2.0 * t)).tanh())
}

/// (1 − q)q^m for m = 0..=m_max, q = e^{−1/T}.
pub fn geometric_resonator_pmf(t: f64, m_max: usize) -> Result<Vec<f64>, StatMechError> {
    if !(t > 0.0) {
        return Err(StatMechError::InvalidArgument(format!("temperature must be positive, got {t}")));
    }
    let q = (-1.0 / t).exp();
    Ok((0..=m_max).map(|m| (1.0 - q) * q.powi(m as i32)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_level(x: f64) -> f64 {
        1.0 / (x.exp() + 1.0)
    }

    /// s(x) = x f(x) + ln(1 + e^{−x}) up to a constant.
    fn s_closed(x: f64) -> f64 {
        x * two_level(x) + (1.0 + (-x).exp()).ln()
    }

    #[test]
    fn converges_to_carnot() {
        let (t_l, t_h) = (1.0, 2.5);
        let (lo, hi) = (0.5, 2.0);
        let r = carnot_cycle(&two_level, 1.0 / t_l, 1.0 / t_h, lo, hi, 2000).unwrap();
        assert!((r.efficiency - (1.0 - t_l / t_h)).abs() < 1e-3, "{}", r.efficiency);
        let w = (t_h - t_l) * (s_closed(lo) - s_closed(hi));
        assert!((r.work - w).abs() < 1e-3 * w.abs(), "{} vs {w}", r.work);
        let lim = carnot_work_limit(&two_level, t_l, t_h, lo, hi).unwrap();
        assert!((lim - w).abs() < 1e-10);
        let coarse = carnot_cycle(&two_level, 1.0, 0.4, 0.5, 3.0, 50).unwrap();
        assert!(r.entropy_balance.abs() < coarse.entropy_balance.abs());
        assert!(r.entropy_balance.abs() < 1e-3);
    }

    #[test]
    fn equal_temperatures_give_no_work() {
        // the finite sums leave an O(1/m) residue
        let coarse = carnot_cycle(&two_level, 1.0, 1.0, 0.5, 3.0, 100).unwrap();
        let fine = carnot_cycle(&two_level, 1.0, 1.0, 0.5, 3.0, 10_000).unwrap();
        assert!(fine.work.abs() < 1e-4 && fine.work.abs() < coarse.work.abs() / 50.0);
        assert!(matches!(
            carnot_cycle(&two_level, 0.5, 1.0, 0.5, 3.0, 10),
            Err(StatMechError::InvalidTemperatureOrder { .. })
        ));
    }

    #[test]
    fn oscillator_energies() {
        assert_eq!(adiabatic_transform(2.0, 1.0, 3.0).unwrap(), 6.0);
        let u = adiabatic_transform(adiabatic_transform(1.7, 2.0, 5.0).unwrap(), 5.0, 2.0).unwrap();
        assert!((u - 1.7).abs() < 1e-15);
        assert_eq!(planck_energy(3.0, 0.0).unwrap(), 1.5);
        assert!((planck_energy(1.0, 100.0).unwrap() / 100.0 - 1.0).abs() < 0.01);
        // (e + 1) / (2(e − 1)) evaluated from the defining ratio
        let e = 1f64.exp();
        assert!((planck_energy(1.0, 1.0).unwrap() - 0.5 * (e + 1.0) / (e - 1.0)).abs() < 1e-14);
        assert!((planck_energy(1.0, 1.0).unwrap() - 1.0820).abs() < 1e-4);
    }

    #[test]
    fn geometric_pmf() {
        let p = geometric_resonator_pmf(0.01, 5).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-40);
        let t = 50.0;
        let p = geometric_resonator_pmf(t, 20_000).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let mean: f64 = p.iter().enumerate().map(|(m, v)| m as f64 * v).sum();
        let q = (-1.0 / t).exp();
        assert!((mean - q / (1.0 - q)).abs() < 1e-8);
        let planck = planck_energy(1.0, t).unwrap();
        assert!(((mean + 0.5) - planck).abs() < 0.01 * planck);
    }
}
