//! Classical lattice Boltzmann reference implementation.
//!
//! This is the ground-truth oracle for the whole crate: every quantum
//! operation is validated against `classical_step` / `simulate_classical`.
//! Supported models are D2Q5 and D3Q7 with BGK collision at relaxation
//! time tau = 1, which reduces one time step to
//!
//! ```text
//! phi(r, t+1) = sum_i k_i(r - c_i) * phi(r - c_i, t)
//! k_i(r)      = w_i * (1 + 3 c_i . u(r))
//! ```
//!
//! on a periodic power-of-two grid.

mod field;
mod kernels;
mod model;
pub mod presets;
mod step;

pub use field::{discrete_divergence, GridSpec, ScalarField, VelocityField};
pub use kernels::{collision_kernels, KernelField};
pub use model::{build_model, LatticeModel, ModelKind};
pub use step::{classical_step, simulate_classical};

use thiserror::Error;

/// Maximum velocity component magnitude; keeps every kernel non-negative
/// and every arccos argument in the angle encodings inside [0, 1].
pub const U_MAX: f64 = 1.0 / 3.0;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("unknown lattice model `{0}` (supported: D2Q5, D3Q7)")]
    UnknownModel(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("velocity component {value} at site {site} exceeds u_max = 1/3")]
    VelocityOutOfRange { site: usize, value: f64 },

    #[error("invalid field: {0}")]
    InvalidField(String),
}
