use super::{GridSpec, KernelField, LatticeError, LatticeModel, ScalarField, VelocityField};
use crate::walls::WallMask;

/// One BGK advection-diffusion step:
/// `phi'(r) = sum_i k_i(r - c_i) phi(r - c_i)` with periodic wrapping.
pub fn classical_step(
    phi: &ScalarField,
    kernels: &KernelField,
    model: &LatticeModel,
) -> Result<ScalarField, LatticeError> {
    if phi.grid != kernels.grid {
        return Err(LatticeError::GridMismatch(
            "density and kernel grids differ".into(),
        ));
    }
    let grid = phi.grid;
    let q = model.q;
    let mut out = vec![0.0; grid.sites()];
    for site in 0..grid.sites() {
        let mut acc = kernels.data[site * q] * phi.data[site];
        for i in 1..q {
            let src = grid.shift_vec(site, [-model.directions[i][0], -model.directions[i][1], -model.directions[i][2]]);
            acc += kernels.data[src * q + i] * phi.data[src];
        }
        out[site] = acc;
    }
    Ok(ScalarField { grid, data: out })
}

/// Runs `steps` classical steps and returns the trajectory
/// `[phi_0, phi_1, ..., phi_T]`. Kernels are built once; the velocity
/// field is static.
pub fn simulate_classical(
    phi0: &ScalarField,
    u: &VelocityField,
    steps: usize,
    model: &LatticeModel,
    walls: Option<&WallMask>,
) -> Result<Vec<ScalarField>, LatticeError> {
    if let Some(mask) = walls {
        mask.check_velocity(u)?;
        mask.check_scalar(phi0)?;
    }
    let kernels = super::collision_kernels(model, u, walls)?;
    let mut traj = Vec::with_capacity(steps + 1);
    traj.push(phi0.clone());
    for _ in 0..steps {
        let next = classical_step(traj.last().unwrap(), &kernels, model)?;
        traj.push(next);
    }
    Ok(traj)
}

/// Column sums `sum_i k_i(r - c_i)`; equals one everywhere for a
/// discretely divergence-free velocity field without walls.
pub fn streaming_column_sums(kernels: &KernelField, model: &LatticeModel) -> ScalarField {
    let grid = kernels.grid;
    let q = model.q;
    let mut out = vec![0.0; grid.sites()];
    for site in 0..grid.sites() {
        let mut acc = kernels.data[site * q];
        for i in 1..q {
            let src = grid.shift_vec(site, [-model.directions[i][0], -model.directions[i][1], -model.directions[i][2]]);
            acc += kernels.data[src * q + i];
        }
        out[site] = acc;
    }
    ScalarField { grid, data: out }
}
