//! Semi-classical laser noise toolkit.
//!
//! Event-driven simulators for quiet oscillators and lasers, point-process
//! spectral estimators, and the closed-form noise spectra, linewidths and
//! noise-propagation rules they are compared against.
//!
//! Units: rates are in inverse model time units (periods for the pendulum,
//! ns for the diode), energies in units of one light quantum unless stated.

pub mod analytic;
pub mod circuits;
pub mod mathkit;
pub mod montecarlo;
pub mod pointproc;
pub mod statmech;
