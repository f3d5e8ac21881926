use crate::pointproc::RationalLaplace;

/// Coherently driven two-level emitter: decay γ, Rabi frequency Ω_R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaitParams {
    pub gamma: f64,
    pub omega_r: f64,
}

impl WaitParams {
    #[must_use]
    pub fn new(gamma: f64, omega_r: f64) -> Self {
        Self { gamma, omega_r }
    }

    /// a = 2γ²/Ω_R².
    #[must_use]
    pub fn a(&self) -> f64 {
        2.0 * self.gamma * self.gamma / (self.omega_r * self.omega_r)
    }
}

/// Waiting-time density between successive emissions.
///
/// Written as γΩ_R² e^{(α−γ)t} [(1 − e^{−αt})/α]² / 2 for real α, which
/// neither overflows at large t nor cancels near α = 0; for imaginary α the
/// sinh becomes sin(βt/2) with β = √(Ω_R² − γ²).
#[must_use]
pub fn waiting_time_density(t: f64, params: &WaitParams) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let WaitParams { gamma, omega_r } = *params;
    let s = gamma * gamma - omega_r * omega_r;
    let c = gamma * omega_r * omega_r;
    if s >= 0.0 {
        let alpha = s.sqrt();
        let f = if alpha == 0.0 { t } else { -(-alpha * t).exp_m1() / alpha };
        0.5 * c * ((alpha - gamma) * t).exp() * f * f
    } else {
        let beta = (-s).sqrt();
        let f = (0.5 * beta * t).sin() / (0.5 * beta);
        0.5 * c * (-gamma * t).exp() * f * f
    }
}

/// γΩ_R² / (p³ + 3γp² + (2γ² + Ω_R²)p + γΩ_R²).
#[must_use]
pub fn waiting_time_laplace(params: &WaitParams) -> RationalLaplace {
    let WaitParams { gamma: g, omega_r: w } = *params;
    let c = g * w * w;
    RationalLaplace::new(vec![c], vec![c, 2.0 * g * g + w * w, 3.0 * g, 1.0])
}

/// (1 + a)/γ.
#[must_use]
pub fn waiting_time_mean(params: &WaitParams) -> f64 {
    (1.0 + params.a()) / params.gamma
}

/// S_r(Ω)/R of the emission sequence.
#[must_use]
pub fn jump_rate_spectrum(omega: f64, params: &WaitParams) -> f64 {
    let a = params.a();
    let x2 = (omega / params.gamma).powi(2);
    1.0 - 3.0 * a / ((1.0 + a).powi(2) + a * (1.25 * a - 1.0) * x2 + 0.25 * a * a * x2 * x2)
}

/// Detector-current noise S_ΔD/D = 2a² − a + 1 of the single-electron laser.
#[must_use]
pub fn single_electron_noise(a: f64) -> f64 {
    2.0 * a * a - a + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleElectronState {
    /// Mean photon number Jτ_p.
    pub mu: f64,
    pub j: f64,
}

impl SingleElectronState {
    /// γ/(1 + a) − J; zero when the emitter supports the pump rate.
    #[must_use]
    pub fn constraint(&self, params: &WaitParams) -> f64 {
        params.gamma / (1.0 + params.a()) - self.j
    }

    /// Both γ solving γ/(1 + 2γ²/Ω_R²) = J, if any (needs Ω_R ≥ 2√2 J).
    #[must_use]
    pub fn gamma_for(&self, omega_r: f64) -> Option<(f64, f64)> {
        let disc = 1.0 - 8.0 * self.j * self.j / (omega_r * omega_r);
        if disc < 0.0 {
            return None;
        }
        let k = omega_r * omega_r / (4.0 * self.j);
        let r = disc.sqrt();
        Some((k * (1.0 - r), k * (1.0 + r)))
    }
}

#[must_use]
pub fn single_electron_steady_state(j: f64, tau_p: f64) -> SingleElectronState {
    SingleElectronState { mu: j * tau_p, j }
}
