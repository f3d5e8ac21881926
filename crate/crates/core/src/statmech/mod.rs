//! Ball-exchange heat engine, Carnot cycles with sub-reservoirs, oscillator
//! energies, isolated-cavity photon statistics and Fermi-Dirac occupancies
//! from integer partitions. Units: k_B = 1, level spacing ε = 1.

mod carnot;
mod cavity;
mod exchange;
mod fermi;

pub use carnot::{
    adiabatic_transform, carnot_cycle, carnot_work_limit, geometric_resonator_pmf, planck_energy, CarnotResult,
};
pub use cavity::{added_energy_pmf, isolated_cavity_pmf, isolated_cavity_pmf_exact, AddedEnergyPmf};
pub use exchange::{
    cycle_step_stats, entropy_step, reservoir_entropy, reservoir_temperature, simulate_exchange, simulate_exchange_evolving,
    CycleStats, Reservoir,
};
pub use fermi::{fermi_dirac, fit_fermi_level, micro_canonical_occupancy, LevelSystem, OccupancyTable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatMechError {
    #[error("invalid reservoir: {0}")]
    InvalidReservoir(String),
    #[error("temperature undefined for an empty reservoir")]
    DegenerateOccupancy,
    #[error("need beta_l > beta_h > 0, got beta_l={beta_l}, beta_h={beta_h}")]
    InvalidTemperatureOrder { beta_l: f64, beta_h: f64 },
    #[error("energy {r} cannot be distributed over {n_e} electrons")]
    InfeasibleEnergy { n_e: usize, r: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
