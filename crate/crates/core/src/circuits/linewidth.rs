use super::CircuitError;
use crate::mathkit::quad;

/// Partial derivatives of the oscillator admittance at the operating point.
/// `s_c` is the density of each noise-current quadrature divided by |V|².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinewidthInputs {
    pub g_n: f64,
    pub b_n: f64,
    pub g_w: f64,
    pub b_w: f64,
    pub s_c: f64,
}

/// One of several gain media sharing the same field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainElement {
    pub j: f64,
    pub alpha: f64,
    pub n_p: f64,
}

/// Placement of the α-dependence in the multi-element average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MultiReading {
    /// ⟨n_p(1 + α²)⟩, which reduces to the single-element (1 + α²) law.
    #[default]
    Product,
    /// ⟨n_p/(1 + α²)⟩, the literal reading of the garbled source formula.
    Quotient,
}

/// Schawlow-Townes width δω = n_p/(Qτ_p²).
#[must_use]
pub fn st_linewidth(q: f64, tau_p: f64, n_p: f64) -> f64 {
    n_p / (q * tau_p * tau_p)
}

/// n_p = G_e/(G_e − G_a) for an emitting conductance partly offset by absorption.
#[must_use]
pub fn inversion_factor(g_e: f64, g_a: f64) -> f64 {
    g_e / (g_e - g_a)
}

/// δω = (B_n² + G_n²)S_C/(B_nG_ω − G_nB_ω)², equal densities for both quadratures.
pub fn general_linewidth(inputs: &LinewidthInputs) -> Result<f64, CircuitError> {
    let LinewidthInputs { g_n, b_n, g_w, b_w, s_c } = *inputs;
    let den = b_n * g_w - g_n * b_w;
    let scale = (b_n * g_w).abs() + (g_n * b_w).abs();
    if den == 0.0 || den.abs() <= 1e-14 * scale {
        return Err(CircuitError::SingularDenominator);
    }
    Ok((b_n * b_n + g_n * g_n) * s_c / (den * den))
}

/// δω = δω_lin·(1 + α_A²)/2·(1 + h²) with α_A = (α + h)/(1 − αh).
pub fn combined_alpha_k(delta_omega_linear: f64, alpha: f64, h: f64) -> Result<f64, CircuitError> {
    let d = 1.0 - alpha * h;
    if d.abs() < 1e-12 {
        return Err(CircuitError::ResonantDenominator);
    }
    let aa = (alpha + h) / d;
    Ok(delta_omega_linear * (1.0 + aa * aa) / 2.0 * (1.0 + h * h))
}

/// Load made of C in parallel with L in series with R_a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesLoad {
    pub r_a: f64,
    pub l: f64,
    pub c: f64,
}

impl SeriesLoad {
    /// Zero-susceptance frequency √(1/LC − (R_a/L)²); NaN when R_a ≥ √(L/C).
    #[must_use]
    pub fn omega_o(&self) -> f64 {
        (1.0 / (self.l * self.c) - (self.r_a / self.l).powi(2)).sqrt()
    }

    /// (dG/dω, dB/dω) at ω_o.
    #[must_use]
    pub fn partials(&self) -> (f64, f64) {
        let SeriesLoad { r_a, l, c } = *self;
        let w = self.omega_o();
        (-2.0 * r_a * w * c * c, -2.0 * c * (1.0 - r_a * r_a * c / l))
    }

    /// h = G_ω/B_ω.
    #[must_use]
    pub fn h(&self) -> f64 {
        let (g_w, b_w) = self.partials();
        g_w / b_w
    }

    /// K = 1/(1 − R_a²C/L).
    #[must_use]
    pub fn k_factor(&self) -> f64 {
        1.0 / (1.0 - self.r_a * self.r_a * self.c / self.l)
    }
}

/// General linewidth of an α = 0 gain element on this load, divided by the
/// linewidth on a dispersion-free load with the same |dY/dω|.
pub fn series_load_enhancement(load: &SeriesLoad, g_n: f64, s_c: f64) -> Result<f64, CircuitError> {
    let (g_w, b_w) = load.partials();
    if !(g_w.is_finite() && b_w.is_finite()) {
        return Err(CircuitError::InvalidArgument(format!("R_a = {} exceeds sqrt(L/C)", load.r_a)));
    }
    let with = general_linewidth(&LinewidthInputs { g_n, b_n: 0.0, g_w, b_w, s_c })?;
    let reference = general_linewidth(&LinewidthInputs { g_n, b_n: 0.0, g_w: 0.0, b_w: -g_w.hypot(b_w), s_c })?;
    Ok(with / reference)
}

/// (ω_o, G_ω, B_ω) of the series-resistance load.
#[must_use]
pub fn series_load_partials(r_a: f64, l: f64, c: f64) -> (f64, f64, f64) {
    let s = SeriesLoad { r_a, l, c };
    let (g_w, b_w) = s.partials();
    (s.omega_o(), g_w, b_w)
}

/// δω·D = (1/τ_p²)·⟨n_p(1 + α²)⟩/(1 − ⟨α⟩h)², averages weighted by J_k.
pub fn multi_element_linewidth(
    elements: &[GainElement],
    h: f64,
    tau_p: f64,
    d: f64,
    reading: MultiReading,
) -> Result<f64, CircuitError> {
    let jt: f64 = elements.iter().map(|e| e.j).sum();
    if !(jt > 0.0) {
        return Err(CircuitError::InvalidArgument("total drive rate must be positive".into()));
    }
    let avg = |f: &dyn Fn(&GainElement) -> f64| elements.iter().map(|e| f(e) * e.j).sum::<f64>() / jt;
    let noise = match reading {
        MultiReading::Product => avg(&|e| e.n_p * (1.0 + e.alpha * e.alpha)),
        MultiReading::Quotient => avg(&|e| e.n_p / (1.0 + e.alpha * e.alpha)),
    };
    let den = 1.0 - avg(&|e| e.alpha) * h;
    if den.abs() < 1e-12 {
        return Err(CircuitError::ResonantDenominator);
    }
    Ok(noise / (den * den * tau_p * tau_p * d))
}

/// Detuned inhomogeneously broadened laser in the wide-distribution limit:
/// δω·D·τ_p² = (1/n² + 10 + 5n²)/32 with n the atom number over threshold.
#[must_use]
pub fn inhomogeneous_linewidth_rinf(n: f64, d: f64, tau_p: f64) -> f64 {
    (1.0 / (n * n) + 10.0 + 5.0 * n * n) / (32.0 * d * tau_p * tau_p)
}

/// Unidirectional ring with gain γ used as the path coordinate, 1 ≤ γ ≤ Γ:
/// δω·D·τ² = ½∫dγ/ℓ · ∫dγ(1 + α²)ℓ/γ².
pub fn ring_linewidth(
    ell: &dyn Fn(f64) -> f64,
    alpha: &dyn Fn(f64) -> f64,
    gamma: f64,
    tau: f64,
    d: f64,
) -> Result<f64, CircuitError> {
    if !(gamma > 1.0) {
        return Err(CircuitError::InvalidArgument(format!("round-trip gain {gamma} must exceed 1")));
    }
    let fail = |e: crate::mathkit::MathError| CircuitError::QuadratureFailure(e.to_string());
    let i1 = quad::integrate(|g| 1.0 / ell(g), 1.0, gamma, 1e-9, 1e-11).map_err(fail)?;
    let i2 = quad::integrate(|g| (1.0 + alpha(g).powi(2)) * ell(g) / (g * g), 1.0, gamma, 1e-9, 1e-11).map_err(fail)?;
    let v = 0.5 * i1 * i2 / (d * tau * tau);
    if !v.is_finite() {
        return Err(CircuitError::QuadratureFailure("non-finite integrand".into()));
    }
    Ok(v)
}
