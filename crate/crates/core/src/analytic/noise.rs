use super::AnalyticError;

/// Pendulum clock with random molecular damping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumParams {
    /// Molecule weight as a fraction of the pendulum weight.
    pub w: f64,
    /// Escapement energy per period.
    pub delta: f64,
    /// Pick-up probability per period.
    pub p: f64,
}

impl PendulumParams {
    #[must_use]
    pub fn mean_energy(&self) -> f64 {
        self.delta / (self.p * self.w)
    }

    /// High-frequency plateau δ²/p.
    #[must_use]
    pub fn plateau(&self) -> f64 {
        self.delta * self.delta / self.p
    }
}

/// S(Ω) = (δ²/p)/(1 + (pw/Ω)²) for the dissipated power.
#[must_use]
pub fn pendulum_spectrum(params: &PendulumParams, omega: f64) -> f64 {
    if omega == 0.0 {
        return 0.0;
    }
    let c = params.p * params.w / omega;
    params.plateau() / (1.0 + c * c)
}

/// N(Ω) = 2(cos Ωτ_r − 1)/(Ωτ_r)² for a unit-rate clock with uniform delays on [0, τ_r).
#[must_use]
pub fn darkroom_noise(omega: f64, tau_r: f64) -> f64 {
    // cos x − 1 = −2 sin²(x/2) avoids cancellation at small x
    let h = 0.5 * omega * tau_r;
    if h == 0.0 {
        return -1.0;
    }
    -(h.sin() / h).powi(2)
}

#[must_use]
pub fn darkroom_g(tau: f64, tau_r: f64) -> f64 {
    let t = tau.abs();
    if t >= tau_r {
        1.0
    } else {
        1.0 - (tau_r - t) / (tau_r * tau_r)
    }
}

/// Relative count variance V(T) of the dark-room process.
#[must_use]
pub fn darkroom_count_variance(t: f64, tau_r: f64) -> f64 {
    if t >= tau_r {
        -1.0 + tau_r / (3.0 * t)
    } else {
        -t / tau_r + t * t / (3.0 * tau_r * tau_r)
    }
}

/// N(Ω) = −1/[D(1 + (Ωτ_p)²)].
#[must_use]
pub fn highpower_relative_noise(omega: f64, tau_p: f64, d: f64) -> f64 {
    let x = omega * tau_p;
    -1.0 / (d * (1.0 + x * x))
}

/// Steady state of the two-level rate equations with N atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEqParams {
    pub big_n: f64,
    pub tau_p: f64,
    pub m: f64,
    pub j: f64,
    /// Upper-state population (N + 1/τ_p)/2.
    pub n: f64,
    /// Dimensionless differential gain 1/(1 − N/2n).
    pub g: f64,
    /// Drive strength g·m/n.
    pub b: f64,
    /// Inversion factor n/(2n − N).
    pub n_p: f64,
}

impl RateEqParams {
    /// Steady state for given N, τ_p and mean quanta m; J = m/τ_p.
    pub fn steady_state(big_n: f64, tau_p: f64, m: f64) -> Result<Self, AnalyticError> {
        if !(big_n > 0.0 && tau_p > 0.0 && m > 0.0) {
            return Err(AnalyticError::InvalidArgument("N, tau_p and m must be positive".into()));
        }
        let n = (big_n + 1.0 / tau_p) / 2.0;
        if n > big_n {
            return Err(AnalyticError::InconsistentSteadyState(format!(
                "threshold needs n = {n} excited atoms out of N = {big_n}"
            )));
        }
        let g = 1.0 / (1.0 - big_n / (2.0 * n));
        Ok(Self { big_n, tau_p, m, j: m / tau_p, n, g, b: g * m / n, n_p: n / (2.0 * n - big_n) })
    }

    /// J = m/τ_p = (2n − N)m within 1e-9 relative.
    pub fn check(&self) -> Result<(), AnalyticError> {
        let q = self.m / self.tau_p;
        let net = (2.0 * self.n - self.big_n) * self.m;
        let tol = 1e-9 * q.abs().max(1e-300);
        if (self.j - q).abs() > tol || (net - q).abs() > tol {
            return Err(AnalyticError::InconsistentSteadyState(format!(
                "J = {}, m/τ_p = {q}, (2n−N)m = {net}",
                self.j
            )));
        }
        Ok(())
    }
}

/// QN(Ω) = {[(Nτ_p+1)/(4m²)]Ω² − 1} / {(Ωτ_p)² + [1 − Ω²τ_p/(2m)]²}.
pub fn rateeq_relative_noise(omega: f64, params: &RateEqParams) -> Result<f64, AnalyticError> {
    params.check()?;
    let RateEqParams { big_n, tau_p, m, .. } = *params;
    let w2 = omega * omega;
    let num = (big_n * tau_p + 1.0) / (4.0 * m * m) * w2 - 1.0;
    let den = w2 * tau_p * tau_p + (1.0 - w2 * tau_p / (2.0 * m)).powi(2);
    Ok(num / den)
}

/// QN for a gain with arbitrary dependence on the population, Ω° = Ωτ_p:
/// [(2n_p/b²)Ω°² − 1] / [Ω°² + (1 − Ω°²/b)²].
///
/// Solving the linearized equations directly gives numerator (2n_p/b²)Ω°²;
/// the often-quoted (2n_p − 1 + 2b)/b² variant does not reduce to
/// `rateeq_relative_noise` under b = 2τ_p m and n_p = (Nτ_p + 1)/2.
#[must_use]
pub fn general_gain_relative_noise(omega_norm: f64, b: f64, n_p: f64) -> f64 {
    let w2 = omega_norm * omega_norm;
    (2.0 * n_p * w2 / (b * b) - 1.0) / (w2 + (1.0 - w2 / b).powi(2))
}

/// var(m)/m = (N + 1/τ_p)/(4m) + 1/2.
#[must_use]
pub fn intracavity_variance(big_n: f64, tau_p: f64, m: f64) -> f64 {
    (big_n + 1.0 / tau_p) / (4.0 * m) + 0.5
}

/// Relaxation angular frequency Ω_r with Ω_r² = (τ_p² − 1)𝒥/(2τ_p²), 𝒥 = Jε/T.
pub fn diode_relaxation_frequency(j: f64, tau_p: f64, eps_over_t: f64) -> Result<f64, AnalyticError> {
    if !(tau_p > 1.0) {
        return Err(AnalyticError::InvalidLifetime(tau_p));
    }
    if !(j > 0.0 && eps_over_t > 0.0) {
        return Err(AnalyticError::InvalidArgument("J and eps/T must be positive".into()));
    }
    Ok(((tau_p * tau_p - 1.0) * j * eps_over_t / (2.0 * tau_p * tau_p)).sqrt())
}

/// JN(Ω) for the diode with evenly spaced levels in quasi-equilibrium.
pub fn diode_relative_noise(omega: f64, j: f64, tau_p: f64, eps_over_t: f64) -> Result<f64, AnalyticError> {
    let wr = diode_relaxation_frequency(j, tau_p, eps_over_t)?;
    let jj = j * eps_over_t;
    let f = (omega / wr).powi(2);
    let k = (tau_p * tau_p - 1.0) / (2.0 * tau_p * tau_p);
    let num = (tau_p + 1.0) / (tau_p - 1.0) * f / jj - 1.0;
    Ok(num / (k * jj * f + (1.0 - f).powi(2)))
}
