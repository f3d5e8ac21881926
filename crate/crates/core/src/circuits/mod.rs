//! Deterministic noise calculus for linear optics: tuned circuits,
//! attenuators and amplifiers acting on quadrature noise, beam splitting,
//! feedback amplifiers and the catalog of laser linewidth formulas.
//!
//! Energies are in units of ħω₀, so rates and powers coincide.

mod beams;
mod linewidth;
mod tuned;

pub use beams::{
    amplifier_propagate, attenuator_propagate, c_amplifier, feedback_stage, feedback_with_compression,
    modulated_source_detected_density, modulated_source_noise, optimal_feedback_factor, split_beam, BeamNoise,
};
pub use linewidth::{
    combined_alpha_k, general_linewidth, inhomogeneous_linewidth_rinf, inversion_factor, multi_element_linewidth,
    ring_linewidth, series_load_enhancement, series_load_partials, st_linewidth, GainElement, LinewidthInputs, MultiReading, SeriesLoad,
};
pub use tuned::{
    admittance_derivative_check, fabry_perot_lifetime, lorentzian_conductance, tuned_circuit_fwhp, Network,
    TunedCircuit, TunedResponse,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("gain {0} outside the allowed range")]
    InvalidGain(f64),
    #[error("linewidth denominator B_n·G_ω − G_n·B_ω vanishes")]
    SingularDenominator,
    #[error("resonant denominator 1 − αh vanishes")]
    ResonantDenominator,
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
