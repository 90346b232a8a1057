//! Compilation of a divergence-free velocity field into rotation-angle
//! data: the per-axis arccos angle fields driving the collision
//! operators, the fast Walsh-Hadamard transform, its interpolated
//! sparse variant for smooth 3D fields, and the pixel-style compilation
//! of an angle field into a single-control rotation program.

mod angles;
mod fwht;
mod interp;
mod qpixl;

pub use angles::{prep_angles, unprep_angles, AngleField, UnprepAngles};
pub use fwht::{fwht, fwht_inverse};
pub use interp::{interpolated_fwht_3d, SparseSpectrum};
pub use qpixl::{qpixl_program, GateOp, GateProgram};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),
}
