use super::CircuitError;

/// Quadrature noise of a beam: X in phase, Y in quadrature, both 1 for a
/// coherent (C-state) beam. Photocount density is X·rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamNoise {
    pub x: f64,
    pub y: f64,
    pub rate: f64,
}

impl BeamNoise {
    #[must_use]
    pub fn coherent(rate: f64) -> Self {
        Self { x: 1.0, y: 1.0, rate }
    }

    #[must_use]
    pub fn is_coherent(&self) -> bool {
        self.x == 1.0 && self.y == 1.0
    }

    /// 𝒩 = (X − 1)/rate.
    #[must_use]
    pub fn relative_noise(&self) -> f64 {
        (self.x - 1.0) / self.rate
    }
}

/// Cold attenuator of power gain 0 < 𝒢 ≤ 1.
pub fn attenuator_propagate(input: BeamNoise, gain: f64) -> Result<BeamNoise, CircuitError> {
    if !(gain > 0.0 && gain <= 1.0) {
        return Err(CircuitError::InvalidGain(gain));
    }
    // written so that 𝒢 = 1 and v = 1 are exact fixed points
    let m = |v: f64| v + (1.0 - gain) * (1.0 - v);
    Ok(BeamNoise { x: m(input.x), y: m(input.y), rate: gain * input.rate })
}

/// Phase-insensitive amplifier with full inversion, 𝒢 ≥ 1.
pub fn amplifier_propagate(input: BeamNoise, gain: f64) -> Result<BeamNoise, CircuitError> {
    if !(gain >= 1.0 && gain.is_finite()) {
        return Err(CircuitError::InvalidGain(gain));
    }
    let m = |v: f64| v + (gain - 1.0) * (v + 1.0);
    Ok(BeamNoise { x: m(input.x), y: m(input.y), rate: gain * input.rate })
}

/// Cross-spectral matrix S_kl = δ_kl D_k + D_k D_l 𝒩 of detectors sharing one beam.
#[must_use]
pub fn split_beam(n_rel: f64, rates: &[f64]) -> Vec<Vec<f64>> {
    rates
        .iter()
        .enumerate()
        .map(|(k, &dk)| {
            rates
                .iter()
                .enumerate()
                .map(|(l, &dl)| if k == l { dk } else { 0.0 } + dk * dl * n_rel)
                .collect()
        })
        .collect()
}

/// Relative noise of a detected beam driven by a prescribed current with
/// independent modulation; `s_mod` is the density of ΔI′/I, so 𝒩 = 4·s_mod.
#[must_use]
pub fn modulated_source_noise(s_mod: f64) -> f64 {
    4.0 * s_mod
}

/// S_ΔD = 4D²·s_mod + D.
#[must_use]
pub fn modulated_source_detected_density(s_mod: f64, d: f64) -> f64 {
    4.0 * d * d * s_mod + d
}

/// Amplifier whose detected current drives the input phase with normalized feedback `f`.
pub fn feedback_stage(input: BeamNoise, gain: f64, f: f64) -> Result<BeamNoise, CircuitError> {
    feedback_with_compression(input, gain, 0.0, f)
}

/// Feedback stage whose gain is compressed by the emitted rate,
/// κ = −(R/G)∂G/∂R. The quadrature output is unaffected by κ.
pub fn feedback_with_compression(input: BeamNoise, gain: f64, kappa: f64, f: f64) -> Result<BeamNoise, CircuitError> {
    if !(gain > 1.0 && gain.is_finite()) {
        return Err(CircuitError::InvalidGain(gain));
    }
    if !(kappa >= 0.0) {
        return Err(CircuitError::InvalidArgument(format!("kappa = {kappa} must be non-negative")));
    }
    let g = gain.sqrt();
    let c = gain - 1.0;
    let x = ((g + kappa).powi(2) * input.y + f * f * c) / (f * c + gain + kappa * g).powi(2);
    Ok(BeamNoise { x, y: gain * input.x + c, rate: gain * input.rate })
}

/// Feedback factor minimizing X_out: (𝔤 + κ)Y_in/𝔤, which equals Y_in at
/// κ = 0 and grows without bound with κ.
#[must_use]
pub fn optimal_feedback_factor(y_in: f64, gain: f64, kappa: f64) -> f64 {
    let g = gain.sqrt();
    (g + kappa) * y_in / g
}

/// C-amplifier: two optimally fed-back stages with 𝒢₂ = 2 − 1/𝒢₁, giving
/// total gain 𝒢 = 2𝒢₁ − 1 and X_out = (X_in + μ)/(μX_in + 1), μ = (𝒢 − 1)/(𝒢 + 1).
pub fn c_amplifier(input: BeamNoise, gain1: f64) -> Result<BeamNoise, CircuitError> {
    if !(gain1 > 1.0 && gain1.is_finite()) {
        return Err(CircuitError::InvalidGain(gain1));
    }
    let g = 2.0 * gain1 - 1.0;
    let mu = (g - 1.0) / (g + 1.0);
    let m = |v: f64| (v + mu) / (mu * v + 1.0);
    Ok(BeamNoise { x: m(input.x), y: m(input.y), rate: g * input.rate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn attenuator_and_amplifier() {
        let c = BeamNoise::coherent(100.0);
        for g in [0.01, 0.3, 1.0] {
            let o = attenuator_propagate(c, g).unwrap();
            assert!(o.is_coherent());
        }
        let squeezed = BeamNoise { x: 0.2, y: 3.0, rate: 50.0 };
        assert_eq!(attenuator_propagate(squeezed, 1.0).unwrap(), squeezed);
        let o = attenuator_propagate(squeezed, 0.37).unwrap();
        assert!((o.relative_noise() - squeezed.relative_noise()).abs() < 1e-15);
        assert_eq!(amplifier_propagate(squeezed, 1.0).unwrap(), squeezed);
        let a = amplifier_propagate(c, 5.0).unwrap();
        assert_eq!((a.x, a.y), (9.0, 9.0));
        assert!(matches!(attenuator_propagate(c, 1.5), Err(CircuitError::InvalidGain(_))));
        assert!(matches!(amplifier_propagate(c, 0.5), Err(CircuitError::InvalidGain(_))));
    }

    proptest! {
        #[test]
        fn chains_compose(gs in proptest::collection::vec(0.05..1.0f64, 5), hs in proptest::collection::vec(1.0..4.0f64, 5),
                          x in 0.0..5.0f64, y in 0.0..5.0f64) {
            let b = BeamNoise { x, y, rate: 10.0 };
            let (mut a, mut m) = (b, b);
            for (&g, &h) in gs.iter().zip(&hs) {
                a = attenuator_propagate(a, g).unwrap();
                m = amplifier_propagate(m, h).unwrap();
            }
            let a1 = attenuator_propagate(b, gs.iter().product()).unwrap();
            let m1 = amplifier_propagate(b, hs.iter().product()).unwrap();
            prop_assert!((a.x - a1.x).abs() < 1e-12 && (a.y - a1.y).abs() < 1e-12);
            prop_assert!((m.x - m1.x).abs() < 1e-12 * m1.x && (m.y - m1.y).abs() < 1e-12 * m1.y);
            prop_assert!((a.rate - a1.rate).abs() < 1e-12 && (m.rate - m1.rate).abs() < 1e-9);
        }

        #[test]
        fn compression_free_matches_plain(x in 0.1..4.0f64, y in 0.1..4.0f64, g in 1.01..10.0f64, f in -3.0..3.0f64) {
            let b = BeamNoise { x, y, rate: 1.0 };
            let p = feedback_stage(b, g, f).unwrap();
            let q = feedback_with_compression(b, g, 0.0, f).unwrap();
            let direct = (g * y + f * f * (g - 1.0)) / (g + f * (g - 1.0)).powi(2);
            prop_assert!((p.x - direct).abs() < 1e-12 * direct.max(1.0));
            prop_assert_eq!(p, q);
        }
    }

    #[test]
    fn splitting() {
        let s = split_beam(0.0, &[1.0, 2.0, 3.0]);
        assert!(s[0][1] == 0.0 && s[1][2] == 0.0 && s[2][2] == 3.0);
        let s = split_beam(-0.004, &[40.0, 60.0]);
        assert!((s[0][1] / (40.0 * 60.0) + 0.004).abs() < 1e-15);
        // equal relative noise on each output
        assert!(((s[0][0] - 40.0) / 1600.0 - (s[1][1] - 60.0) / 3600.0).abs() < 1e-15);
    }

    #[test]
    fn modulated() {
        assert_eq!(modulated_source_noise(0.0), 0.0);
        assert!(modulated_source_noise(1e-6) > 0.0);
        let d = 7.0;
        let s = modulated_source_detected_density(0.01, d);
        assert!(((s / d - 1.0) / d - modulated_source_noise(0.01)).abs() < 1e-15);
    }

    #[test]
    fn feedback_optimum() {
        let c = BeamNoise::coherent(1.0);
        let o = feedback_stage(c, 2.0, 1.0).unwrap();
        assert!((o.x - 1.0 / 3.0).abs() < 1e-15 && o.y == 3.0);
        let b = BeamNoise { x: 1.0, y: 1.7, rate: 1.0 };
        let fs: Vec<f64> = (0..=400_000).map(|k| k as f64 * 1e-5).collect();
        let best = fs
            .iter()
            .copied()
            .min_by(|a, c| feedback_stage(b, 3.0, *a).unwrap().x.total_cmp(&feedback_stage(b, 3.0, *c).unwrap().x))
            .unwrap();
        assert!((best - 1.7).abs() <= 1e-5);
        let at = feedback_stage(b, 3.0, 1.7).unwrap().x;
        assert!((1.0 / at - (3.0 / 1.7 + 2.0)).abs() < 1e-12);
        for f in [0.0, 1.0, 1.69, 1.71, 5.0] {
            assert!(feedback_stage(b, 3.0, f).unwrap().x > at);
        }
    }

    #[test]
    fn compression_optimum_independent_of_kappa() {
        let b = BeamNoise { x: 1.3, y: 0.8, rate: 1.0 };
        let g = 4.0;
        for kappa in [0.0, 0.05, 0.5] {
            let f = optimal_feedback_factor(b.y, g, kappa);
            let x = feedback_with_compression(b, g, kappa, f).unwrap().x;
            assert!((1.0 / x - (g / b.y + g - 1.0)).abs() < 1e-12, "κ={kappa}");
            for df in [-1e-3, 1e-3] {
                assert!(feedback_with_compression(b, g, kappa, f + df).unwrap().x > x);
            }
        }
        // the optimal feedback factor diverges as κ grows
        let fs: Vec<f64> = [1.0, 10.0, 100.0, 1e4].iter().map(|&k| optimal_feedback_factor(b.y, g, k)).collect();
        assert!(fs.windows(2).all(|w| w[1] > w[0]) && fs[3] > 1e3);
        assert!(feedback_with_compression(b, g, -0.1, 1.0).is_err());
    }

    #[test]
    fn c_amplifier_closed_form() {
        assert!(c_amplifier(BeamNoise::coherent(1.0), 3.0).unwrap().is_coherent());
        let b = BeamNoise { x: 2.0, y: 0.5, rate: 1.0 };
        let o = c_amplifier(b, 2.0).unwrap();
        assert!((o.x - 1.25).abs() < 1e-15);
        for g1 in [1.1, 2.0, 7.5] {
            let g = 2.0 * g1 - 1.0;
            let mu = (g - 1.0) / (g + 1.0);
            let o = c_amplifier(b, g1).unwrap();
            assert!((o.x - (b.x + mu) / (mu * b.x + 1.0)).abs() < 1e-12);
            // the same device built from two optimal feedback stages
            let mid = feedback_stage(b, g1, b.y).unwrap();
            let chain = feedback_stage(mid, 2.0 - 1.0 / g1, mid.y).unwrap();
            assert!((o.x - chain.x).abs() < 1e-12 && (o.y - chain.y).abs() < 1e-12);
            assert!((o.rate - g).abs() < 1e-12);
        }
        let near = c_amplifier(b, 1.0 + 1e-12).unwrap();
        assert!((near.x - b.x).abs() < 1e-9 && (near.y - b.y).abs() < 1e-9);
        assert!(c_amplifier(b, 1.0).is_err());
    }
}
