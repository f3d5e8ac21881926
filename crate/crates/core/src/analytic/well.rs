use std::f64::consts::PI;

const HBAR: f64 = 1.054_571_817e-34;
const M_E: f64 = 9.109_383_701_5e-31;
const E_CHARGE: f64 = 1.602_176_634e-19;

/// Constants of an electron in an infinite square well of width d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellConstants {
    /// Ground level, eV.
    pub e1: f64,
    /// First excited level, eV.
    pub e2: f64,
    /// Transition angular frequency (E₂ − E₁)/ħ, rad/s.
    pub omega_o: f64,
    /// Dipole matrix element 16d/(9π²), m.
    pub x12: f64,
    /// Oscillator strength 256/(27π²).
    pub f: f64,
    /// ħΩ_R per volt across the well, eV/V: x₁₂·e√2/d.
    pub rabi_per_volt: f64,
}

/// Square-well constants for width `d` in metres.
#[must_use]
pub fn well_constants(d: f64) -> WellConstants {
    let level = |n: f64| PI * PI * HBAR * HBAR * n * n / (2.0 * M_E * d * d) / E_CHARGE;
    let (e1, e2) = (level(1.0), level(2.0));
    let x12 = 16.0 * d / (9.0 * PI * PI);
    WellConstants {
        e1,
        e2,
        omega_o: (e2 - e1) * E_CHARGE / HBAR,
        x12,
        f: 256.0 / (27.0 * PI * PI),
        rabi_per_volt: x12 * 2f64.sqrt() / d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkit::quad;

    #[test]
    fn values() {
        let w = well_constants(1e-9);
        assert!((w.f - 0.96).abs() < 0.01);
        let hw = HBAR * w.omega_o / E_CHARGE;
        assert!((hw - 1.12).abs() < 0.01, "{hw}");
        assert!((w.e2 / w.e1 - 4.0).abs() < 1e-12);
        assert!((well_constants(2e-9).x12 - 2.0 * w.x12).abs() < 1e-24);
        assert!((w.rabi_per_volt / 2f64.sqrt() - 16.0 / (9.0 * PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn dipole_by_quadrature() {
        // ⟨1|x|2⟩ with ψ_n = √(2/d) sin(nπx/d), origin at the well centre
        let d = 1.0;
        let x12 = quad::integrate(
            |x| 2.0 / d * (PI * x / d).sin() * (x - d / 2.0) * (2.0 * PI * x / d).sin(),
            0.0,
            d,
            1e-14,
            1e-13,
        )
        .unwrap();
        assert!((x12.abs() - well_constants(d).x12).abs() < 1e-12);
        // f = 2mω x₁₂²/ħ
        let w = well_constants(1e-9);
        let f = 2.0 * M_E * w.omega_o * w.x12 * w.x12 / HBAR;
        assert!((f - w.f).abs() < 1e-9);
    }
}
