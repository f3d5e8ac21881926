//! Scenario-driven front end for the quietlight toolkit.
//!
//! Every command writes plain CSV or JSON so a `simulate → analyze →
//! compare` pipeline can run under CI. Exit codes: 0 on success or a passed
//! comparison, 2 on a failed comparison, 1 on any error.

pub mod analytic;
pub mod analyze;
pub mod compare;
pub mod io;
pub mod linewidth;
pub mod params;
pub mod scenario;
pub mod simulate;

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("invalid `{field}`: {msg}")]
    Validation { field: String, msg: String },
    #[error("unknown model `{name}`; expected one of: {expected}")]
    UnknownModel { name: String, expected: String },
    #[error("frequency grids do not overlap")]
    DisjointGrids,
    #[error("no files match `{0}`")]
    NoInput(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Simulation(#[from] quietlight::montecarlo::McError),
    #[error(transparent)]
    PointProcess(#[from] quietlight::pointproc::PointProcError),
    #[error(transparent)]
    Analytic(#[from] quietlight::analytic::AnalyticError),
    #[error(transparent)]
    Circuit(#[from] quietlight::circuits::CircuitError),
}

impl CliError {
    pub(crate) fn validation(field: impl Into<String>, msg: impl Into<String>) -> Self {
        CliError::Validation { field: field.into(), msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Toolkit version recorded in manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
