use super::{GridSpec, LatticeError, LatticeModel, VelocityField, U_MAX};
use crate::walls::WallMask;

/// Per-site collision kernels `k_i(r)`, stored site-major
/// (`data[site * q + i]`). Rows sum to one at every site.
#[derive(Clone, Debug)]
pub struct KernelField {
    pub grid: GridSpec,
    pub q: usize,
    pub data: Vec<f64>,
}

impl KernelField {
    pub fn at(&self, site: usize) -> &[f64] {
        &self.data[site * self.q..(site + 1) * self.q]
    }
}

/// Evaluates `k_i(r) = w_i (1 + 3 c_i . u(r))` at every site.
///
/// With a wall mask, every direction `i` streaming into a wall site is
/// blocked: `k_i(r)` is folded into `k_0(r)` and set to zero, preserving
/// `sum_i k_i(r) = 1`. Kernels at wall sites themselves are zeroed; the
/// density there is zero so they never contribute.
pub fn collision_kernels(
    model: &LatticeModel,
    u: &VelocityField,
    walls: Option<&WallMask>,
) -> Result<KernelField, LatticeError> {
    u.check_magnitude()?;
    if let Some(mask) = walls {
        if mask.grid != u.grid {
            return Err(LatticeError::GridMismatch(
                "wall mask grid differs from velocity grid".into(),
            ));
        }
    }
    let grid = u.grid;
    if grid.dims != model.dims {
        return Err(LatticeError::GridMismatch(format!(
            "velocity field is {}-dimensional but model {} expects {}",
            grid.dims,
            model.kind.name(),
            model.dims
        )));
    }
    let q = model.q;
    let mut data = vec![0.0; grid.sites() * q];
    for site in 0..grid.sites() {
        if walls.is_some_and(|m| m.is_wall(site)) {
            continue;
        }
        let vel = u.data[site];
        let row = &mut data[site * q..(site + 1) * q];
        for (i, (c, w)) in model.directions.iter().zip(&model.weights).enumerate() {
            let cu = c[0] as f64 * vel[0] + c[1] as f64 * vel[1] + c[2] as f64 * vel[2];
            let k = w * (1.0 + 3.0 * cu);
            if k < -1e-12 {
                return Err(LatticeError::VelocityOutOfRange {
                    site,
                    value: cu.abs().copysign(if cu > 0.0 { 1.0 } else { -1.0 }) * U_MAX * 3.0,
                });
            }
            row[i] = k.max(0.0);
        }
        if let Some(mask) = walls {
            for i in 1..q {
                let neighbor = grid.shift_vec(site, model.directions[i]);
                if mask.is_wall(neighbor) {
                    row[0] += row[i];
                    row[i] = 0.0;
                }
            }
        }
    }
    Ok(KernelField { grid, q, data })
}
