//! Closed-form noise spectra and rates: pendulum clock, dark room,
//! linearized laser rate equations, evenly-spaced-level diode, waiting-time
//! statistics, single-electron laser and square-well coupling constants.
//!
//! Time is in the model's natural unit (periods, ns); rates in its inverse.

mod noise;
mod waiting;
mod well;

pub use noise::{
    darkroom_count_variance, darkroom_g, darkroom_noise, diode_relative_noise, diode_relaxation_frequency,
    general_gain_relative_noise, highpower_relative_noise, intracavity_variance, pendulum_spectrum,
    rateeq_relative_noise, PendulumParams, RateEqParams,
};
pub use waiting::{
    jump_rate_spectrum, single_electron_noise, single_electron_steady_state, waiting_time_density,
    waiting_time_laplace, waiting_time_mean, SingleElectronState, WaitParams,
};
pub use well::{well_constants, WellConstants};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("inconsistent steady state: {0}")]
    InconsistentSteadyState(String),
    #[error("resonator lifetime must exceed 1 in normalized units, got {0}")]
    InvalidLifetime(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
