//! Exact statevector semantics of the QLBM circuit.
//!
//! One time step is `postselect . U_Q . U_S . U_P` (with per-site wall
//! correction rotations spliced around streaming when walls are active):
//! PREP loads the square-root collision kernels onto a one-hot direction
//! register, streaming shifts each one-hot sector by its lattice vector,
//! UNPREP recombines the shifted weights back into the all-zeros
//! direction sector, and post-selection on that sector yields the next
//! density state with success probability equal to the squared norm
//! ratio of consecutive densities.

mod layout;
mod measure;
mod ops;
mod state;

pub use layout::RegisterLayout;
pub use measure::{measure_histogram, sample_grid_state, ShotClass};
pub use ops::{
    apply_prep, apply_streaming, apply_unprep, encode_density, postselect, qlbm_step, run_chain,
    ChainResult, Route, WallContext,
};
pub use state::StateVector;

use crate::lattice::LatticeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StateError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate projection: success probability {0:.3e} below 1e-15")]
    DegenerateProjection(f64),

    #[error("domain error: {0}")]
    Domain(String),
}
