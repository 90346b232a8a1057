use super::{LatticeError, U_MAX};

/// Periodic cubic grid of side `L = 2^l` per dimension, flattened as
/// `index = x + L*y + L^2*z` (z fixed to 0 in 2D).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub dims: usize,
    /// log2 of the side length.
    pub l: u32,
}

impl GridSpec {
    pub fn new(dims: usize, side: usize) -> Result<Self, LatticeError> {
        if dims != 2 && dims != 3 {
            return Err(LatticeError::InvalidField(format!(
                "dimension must be 2 or 3, got {dims}"
            )));
        }
        if !side.is_power_of_two() || side < 2 {
            return Err(LatticeError::InvalidField(format!(
                "grid side must be a power of two >= 2, got {side}"
            )));
        }
        Ok(GridSpec {
            dims,
            l: side.trailing_zeros(),
        })
    }

    /// Side length per dimension.
    pub fn side(&self) -> usize {
        1 << self.l
    }

    /// Total site count `L^dims`.
    pub fn sites(&self) -> usize {
        1 << (self.l * self.dims as u32)
    }

    /// Grid-register qubit count `dims * l`.
    pub fn qubits(&self) -> usize {
        self.dims * self.l as usize
    }

    pub fn index(&self, coords: [usize; 3]) -> usize {
        let side = self.side();
        debug_assert!(coords[0] < side && coords[1] < side);
        debug_assert!(self.dims == 3 || coords[2] == 0);
        coords[0] + side * coords[1] + side * side * coords[2]
    }

    pub fn coords(&self, index: usize) -> [usize; 3] {
        let mask = self.side() - 1;
        [
            index & mask,
            (index >> self.l) & mask,
            if self.dims == 3 {
                (index >> (2 * self.l)) & mask
            } else {
                0
            },
        ]
    }

    /// Site index shifted by `delta` along `axis`, wrapping periodically.
    pub fn shift(&self, index: usize, axis: usize, delta: i64) -> usize {
        debug_assert!(axis < self.dims);
        let mask = (self.side() - 1) as i64;
        let pos = ((index >> (axis as u32 * self.l)) as i64) & mask;
        let new = (pos + delta) & mask;
        (index as i64 + ((new - pos) << (axis as u32 * self.l))) as usize
    }

    /// Site index shifted by an integer direction vector.
    pub fn shift_vec(&self, index: usize, c: [i64; 3]) -> usize {
        let mut idx = index;
        for axis in 0..self.dims {
            if c[axis] != 0 {
                idx = self.shift(idx, axis, c[axis]);
            }
        }
        idx
    }
}

/// Real non-negative density on the grid.
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub data: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: GridSpec, data: Vec<f64>) -> Result<Self, LatticeError> {
        if data.len() != grid.sites() {
            return Err(LatticeError::GridMismatch(format!(
                "field has {} values for a grid of {} sites",
                data.len(),
                grid.sites()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(LatticeError::InvalidField(
                "scalar field contains non-finite values".into(),
            ));
        }
        Ok(ScalarField { grid, data })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        ScalarField {
            grid,
            data: vec![0.0; grid.sites()],
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Copy normalized to unit L2 norm.
    pub fn normalized(&self) -> Result<Self, LatticeError> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(LatticeError::InvalidField("cannot normalize zero field".into()));
        }
        Ok(ScalarField {
            grid: self.grid,
            data: self.data.iter().map(|v| v / n).collect(),
        })
    }
}

/// Velocity field with `dims` components per site (z component zero in 2D).
#[derive(Clone, Debug)]
pub struct VelocityField {
    pub grid: GridSpec,
    /// Per-site velocity vectors.
    pub data: Vec<[f64; 3]>,
}

impl VelocityField {
    pub fn new(grid: GridSpec, data: Vec<[f64; 3]>) -> Result<Self, LatticeError> {
        if data.len() != grid.sites() {
            return Err(LatticeError::GridMismatch(format!(
                "velocity field has {} vectors for a grid of {} sites",
                data.len(),
                grid.sites()
            )));
        }
        Ok(VelocityField { grid, data })
    }

    pub fn zero(grid: GridSpec) -> Self {
        VelocityField {
            grid,
            data: vec![[0.0; 3]; grid.sites()],
        }
    }

    /// Checks `|u_a| <= 1/3` everywhere.
    pub fn check_magnitude(&self) -> Result<(), LatticeError> {
        for (site, u) in self.data.iter().enumerate() {
            for a in 0..self.grid.dims {
                if u[a].abs() > U_MAX + 1e-12 || !u[a].is_finite() {
                    return Err(LatticeError::VelocityOutOfRange {
                        site,
                        value: u[a],
                    });
                }
            }
        }
        Ok(())
    }

    /// Checks the central-difference discrete divergence vanishes at
    /// every site (this is exactly the condition making the streaming
    /// column sums equal one).
    pub fn check_divergence_free(&self, tol: f64) -> Result<(), LatticeError> {
        let div = discrete_divergence(self);
        for (site, d) in div.data.iter().enumerate() {
            if d.abs() > tol {
                return Err(LatticeError::InvalidField(format!(
                    "velocity field is not divergence-free: |div| = {:.3e} at site {site}",
                    d.abs()
                )));
            }
        }
        Ok(())
    }
}

/// Central-difference divergence with periodic wrapping:
/// `div(r) = sum_a (u_a(r + e_a) - u_a(r - e_a)) / 2`.
pub fn discrete_divergence(u: &VelocityField) -> ScalarField {
    let grid = u.grid;
    let mut out = vec![0.0; grid.sites()];
    for idx in 0..grid.sites() {
        let mut d = 0.0;
        for a in 0..grid.dims {
            let fwd = grid.shift(idx, a, 1);
            let bwd = grid.shift(idx, a, -1);
            d += (u.data[fwd][a] - u.data[bwd][a]) / 2.0;
        }
        out[idx] = d;
    }
    ScalarField { grid, data: out }
}
