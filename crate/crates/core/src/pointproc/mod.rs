//! Stationary point processes: event series, periodogram spectra, relative
//! noise, pair correlation, count variance, thinning, superposition and
//! renewal spectra from waiting-time Laplace transforms.

mod correlation;
mod counts;
mod ops;
mod renewal;
mod series;
mod spectrum;

pub use correlation::{correlation_estimate, correlation_to_noise, CorrelationEstimate};
pub use counts::{count_variance, count_variance_curve};
pub use ops::{superpose, thin};
pub use renewal::{
    inhom_poisson_rate, inhom_poisson_waiting, renewal_spectrum, RationalLaplace, TabulatedRate,
};
pub use series::EventSeries;
pub use spectrum::{first_upward_crossing, peak_location, periodogram, relative_noise, SpectrumEstimate};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointProcError {
    #[error("no event series supplied, or all series are empty")]
    EmptySeriesSet,
    #[error("series durations differ ({0} vs {1})")]
    MismatchedDurations(f64, f64),
    #[error("rate must be positive")]
    ZeroRate,
    #[error("window {window} exceeds a quarter of the duration {duration}")]
    WindowTooLarge { window: f64, duration: f64 },
    #[error("probability must lie in (0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("improper waiting-time transform: {0}")]
    ImproperWaitingTime(String),
    #[error("negative density value {0}")]
    NegativeDensity(f64),
    #[error("invalid event series: {0}")]
    InvalidSeries(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
