use num_complex::Complex64;

/// Parallel G-L-C resonator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunedCircuit {
    pub l: f64,
    pub c: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunedResponse {
    pub omega0: f64,
    pub delta_omega: f64,
    pub tau_p: f64,
}

impl TunedCircuit {
    /// Y(ω) = G − i(Cω − 1/Lω).
    #[must_use]
    pub fn admittance(&self, omega: f64) -> Complex64 {
        Complex64::new(self.g, -(self.c * omega - 1.0 / (self.l * omega)))
    }

    /// G|V|² for a unit current source.
    #[must_use]
    pub fn dissipated_power(&self, omega: f64) -> f64 {
        self.g / self.admittance(omega).norm_sqr()
    }

    /// G/(G² + 4C²(ω − ω₀)²), the small-loss form.
    #[must_use]
    pub fn dissipated_power_small_loss(&self, omega: f64) -> f64 {
        let w0 = 1.0 / (self.l * self.c).sqrt();
        self.g / (self.g * self.g + 4.0 * self.c * self.c * (omega - w0).powi(2))
    }
}

#[must_use]
pub fn tuned_circuit_fwhp(tc: &TunedCircuit) -> TunedResponse {
    TunedResponse { omega0: 1.0 / (tc.l * tc.c).sqrt(), delta_omega: tc.g / tc.c, tau_p: tc.c / tc.g }
}

/// Lifetime of a Fabry-Pérot resonator from mirror transmissions and round-trip time.
#[must_use]
pub fn fabry_perot_lifetime(t1: f64, t2: f64, round_trip: f64) -> f64 {
    round_trip / (t1 + t2)
}

/// Two-terminal network of lumped elements.
#[derive(Debug, Clone, PartialEq)]
pub enum Network {
    /// Admittance G; may be negative for a gain medium.
    Conductance(f64),
    /// Impedance R.
    Resistance(f64),
    Capacitance(f64),
    Inductance(f64),
    Series(Vec<Network>),
    Parallel(Vec<Network>),
}

impl Network {
    /// Admittance with capacitor −iCω and inductor impedance −iLω.
    #[must_use]
    pub fn admittance(&self, omega: f64) -> Complex64 {
        match self {
            Network::Conductance(g) => Complex64::new(*g, 0.0),
            Network::Resistance(r) => Complex64::new(1.0 / r, 0.0),
            Network::Capacitance(c) => Complex64::new(0.0, -c * omega),
            Network::Inductance(l) => Complex64::new(0.0, 1.0 / (l * omega)),
            Network::Parallel(v) => v.iter().map(|n| n.admittance(omega)).sum(),
            Network::Series(v) => 1.0 / v.iter().map(|n| 1.0 / n.admittance(omega)).sum::<Complex64>(),
        }
    }

    /// Σ C_k V_k² − L_k I_k² with the terminal voltage `v` applied.
    #[must_use]
    pub fn reactive_sum(&self, omega: f64, v: Complex64) -> Complex64 {
        match self {
            Network::Conductance(_) | Network::Resistance(_) => Complex64::new(0.0, 0.0),
            Network::Capacitance(c) => *c * v * v,
            Network::Inductance(l) => {
                let i = v * self.admittance(omega);
                -*l * i * i
            }
            Network::Parallel(ns) => ns.iter().map(|n| n.reactive_sum(omega, v)).sum(),
            Network::Series(ns) => {
                let i = v * self.admittance(omega);
                ns.iter().map(|n| n.reactive_sum(omega, i / n.admittance(omega))).sum()
            }
        }
    }
}

/// |iV² dY/dω − Σ(C_kV_k² − L_kI_k²)|, the derivative taken by
/// Richardson-extrapolated central differences.
#[must_use]
pub fn admittance_derivative_check(network: &Network, omega: f64, v: Complex64) -> f64 {
    let cd = |h: f64| (network.admittance(omega + h) - network.admittance(omega - h)) / (2.0 * h);
    let h = 1e-3 * omega;
    let dy = (4.0 * cd(h / 2.0) - cd(h)) / 3.0;
    (Complex64::i() * v * v * dy - network.reactive_sum(omega, v)).norm()
}

/// g(ω) = r/(r² + (lω − 1/cω)²) of a series r-l-c branch.
#[must_use]
pub fn lorentzian_conductance(omega: f64, l: f64, c: f64, r: f64) -> f64 {
    let x = l * omega - 1.0 / (c * omega);
    r / (r * r + x * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let fa = f(a);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if (f(m) > 0.0) == (fa > 0.0) { a = m } else { b = m }
        }
        0.5 * (a + b)
    }

    #[test]
    fn half_power_points() {
        let tc = TunedCircuit { l: 1.0, c: 1.0, g: 1.0 };
        assert_eq!(tuned_circuit_fwhp(&tc).delta_omega, 1.0);
        let tc = TunedCircuit { l: 2.0, c: 0.5, g: 0.01 };
        let r = tuned_circuit_fwhp(&tc);
        let w0 = r.omega0;
        let peak = tc.dissipated_power_small_loss(w0);
        let lo = bisect(|w| tc.dissipated_power_small_loss(w) - peak / 2.0, w0 - 1.0, w0);
        let hi = bisect(|w| tc.dissipated_power_small_loss(w) - peak / 2.0, w0, w0 + 1.0);
        assert!((lo - (w0 - tc.g / (2.0 * tc.c))).abs() < 1e-6);
        assert!((hi - (w0 + tc.g / (2.0 * tc.c))).abs() < 1e-6);
        // the exact response has the same full width
        let peak = tc.dissipated_power(w0);
        let lo = bisect(|w| tc.dissipated_power(w) - peak / 2.0, w0 * 0.5, w0);
        let hi = bisect(|w| tc.dissipated_power(w) - peak / 2.0, w0, w0 * 2.0);
        assert!((hi - lo - r.delta_omega).abs() < 1e-9);
        assert!((r.tau_p * r.delta_omega - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fabry_perot() {
        assert!((1.0 / fabry_perot_lifetime(0.01, 0.01, 10e-12) - 0.02 / 10e-12).abs() < 1e-3);
    }

    #[test]
    fn reactive_energy_identity() {
        let v = Complex64::new(0.7, -0.3);
        let cap = Network::Capacitance(2.5);
        let w = 1.3;
        let lhs = Complex64::i() * v * v * Complex64::new(0.0, -2.5);
        assert!((lhs - cap.reactive_sum(w, v)).norm() < 1e-15);
        assert!(admittance_derivative_check(&cap, w, v) < 1e-12);
        let lr = Network::Series(vec![Network::Inductance(0.8), Network::Resistance(0.4)]);
        // symbolic: Y = 1/(R − iLω), dY/dω = iL/(R − iLω)²
        let z = Complex64::new(0.4, -0.8 * w);
        let dy = Complex64::new(0.0, 0.8) / (z * z);
        let sym = Complex64::i() * v * v * dy;
        assert!((sym - lr.reactive_sum(w, v)).norm() < 1e-12);
        assert!(admittance_derivative_check(&lr, w, v) < 1e-8);
        // C ∥ (L + R_a) ∥ −G_e
        let fig = Network::Parallel(vec![
            Network::Capacitance(1.0),
            Network::Series(vec![Network::Inductance(1.0), Network::Resistance(0.3)]),
            Network::Conductance(-0.3),
        ]);
        let scale = fig.reactive_sum(0.95, v).norm();
        assert!(admittance_derivative_check(&fig, 0.95, v) < 1e-8 * scale.max(1.0));
        let nested = Network::Series(vec![
            Network::Parallel(vec![Network::Capacitance(0.2), Network::Conductance(0.1)]),
            Network::Inductance(3.0),
            Network::Parallel(vec![Network::Inductance(0.5), Network::Capacitance(1.5), Network::Resistance(2.0)]),
        ]);
        assert!(admittance_derivative_check(&nested, 2.1, v) < 1e-8);
    }

    #[test]
    fn lorentzian() {
        let (l, c, r) = (2.0_f64, 0.125, 0.5);
        let w0 = 1.0 / (l * c).sqrt();
        assert!((lorentzian_conductance(w0, l, c, r) - 2.0).abs() < 1e-12);
        assert!(lorentzian_conductance(1e-9, l, c, r) < 1e-15);
        assert!(lorentzian_conductance(1e9, l, c, r) < 1e-15);
        for w in [0.3, 1.0, 4.5] {
            let a = lorentzian_conductance(w, l, c, r);
            let b = lorentzian_conductance(1.0 / (l * c * w), l, c, r);
            assert!((a - b).abs() < 1e-12);
        }
    }
}
