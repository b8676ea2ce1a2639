//! Potential theory on the upper half-space `H = {x ∈ R^n : x_n > 0}`, `n >= 3`.
//!
//! The crate evaluates the classical kernels of `H` (fundamental solution,
//! Green function, Poisson kernel) together with their modified versions,
//! which subtract the leading Gegenbauer terms of each kernel's expansion so
//! that rapidly growing boundary data and measures still have convergent
//! integrals. On top of the kernels sit Poisson integrals, Green potentials,
//! exceptional-set machinery (maximal function, Vitali covering, growth
//! scans) and a discretised capacity solver with a thinness series.
//!
//! The `examples/` directory holds one runnable program per capability;
//! the `hpot` binary wraps the same operations for scripting.

pub mod capacity;
pub mod cli;
pub mod error;
pub mod exceptional;
pub mod gegenbauer;
pub mod geometry;
pub mod kernels;
pub mod measures;
pub mod potentials;
pub mod quadrature;

pub use error::{Error, Result};
pub use geometry::{Ball, BoundaryPoint, Point};
pub use kernels::KernelConfig;
pub use measures::{AtomicMeasure, BoundaryData, Family};
pub use potentials::PotentialField;
