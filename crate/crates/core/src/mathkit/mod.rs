//! Numeric utilities: bicomplex algebra, polynomial roots, rational inverse
//! Laplace transforms, the Imn integral table, integer partitions and
//! adaptive quadrature.

mod bicomplex;
mod imn;
mod laplace;
mod partitions;
pub mod poly;
pub mod quad;
mod roots;

pub use bicomplex::{bicomplex_invert, bicomplex_mul, Bicomplex};
pub use imn::{imn_integral, imn_quadrature, IMN_PAIRS};
pub use laplace::heaviside_inverse_laplace;
pub use partitions::{
    bounded_partitions, gaussian_polynomial, partition_asymptotic, partitions, PartitionTable,
};
pub use roots::{companion_roots, solve_cubic, solve_quadratic, PolyRoots};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("bicomplex value is singular (A = {a}, B = {b})")]
    SingularBicomplex { a: f64, b: f64 },
    #[error("leading coefficient is zero")]
    DegenerateLeadingCoefficient,
    #[error("polynomial has repeated roots (separation {separation:e})")]
    RepeatedRoots { separation: f64 },
    #[error("no tabulated closed form for I_{m}{n}")]
    UnsupportedIndexPair { m: u32, n: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not converge (estimated error {error:e})")]
    QuadratureFailure { error: f64 },
}
