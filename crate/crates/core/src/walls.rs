//! Wall boundaries: masks, adjacency flags, and the correction
//! rotations that zero streaming into and out of solid sites.
//!
//! A blocked direction's kernel weight is folded into the rest kernel by
//! a two-level rotation between the rest one-hot state and the blocked
//! one-hot state. The fold angles depend only on the wall pattern, not
//! on the velocity field, because the normal velocity vanishes at wall
//! faces (so the blocked kernel is exactly its lattice weight).

use crate::lattice::{GridSpec, LatticeError, LatticeModel, ScalarField, VelocityField};
use crate::statevector::StateVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WallError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),

    #[error("wall flag pattern {0:#b} missing from correction plan")]
    MissingPattern(u8),

    #[error("state layout does not match wall flags: {0}")]
    LayoutMismatch(String),
}

/// Boolean solid mask over the grid; `true` marks a wall site.
#[derive(Clone, Debug)]
pub struct WallMask {
    pub grid: GridSpec,
    pub solid: Vec<bool>,
}

impl WallMask {
    pub fn new(grid: GridSpec, solid: Vec<bool>) -> Result<Self, LatticeError> {
        if solid.len() != grid.sites() {
            return Err(LatticeError::GridMismatch(format!(
                "wall mask has {} entries for a grid of {} sites",
                solid.len(),
                grid.sites()
            )));
        }
        if solid.iter().all(|&s| s) {
            return Err(LatticeError::InvalidField(
                "wall mask covers every site".into(),
            ));
        }
        Ok(WallMask { grid, solid })
    }

    pub fn empty(grid: GridSpec) -> Self {
        WallMask {
            grid,
            solid: vec![false; grid.sites()],
        }
    }

    pub fn is_wall(&self, site: usize) -> bool {
        self.solid[site]
    }

    pub fn wall_count(&self) -> usize {
        self.solid.iter().filter(|&&s| s).count()
    }

    /// BFS distance (in lattice steps over face neighbors) to the
    /// nearest wall site. Walls themselves have distance 0; with no
    /// walls every site gets `usize::MAX`.
    pub fn distance_field(&self) -> Vec<usize> {
        let grid = self.grid;
        let mut dist = vec![usize::MAX; grid.sites()];
        let mut queue = std::collections::VecDeque::new();
        for (idx, &s) in self.solid.iter().enumerate() {
            if s {
                dist[idx] = 0;
                queue.push_back(idx);
            }
        }
        while let Some(idx) = queue.pop_front() {
            for axis in 0..grid.dims {
                for delta in [-1i64, 1] {
                    let nb = grid.shift(idx, axis, delta);
                    if dist[nb] == usize::MAX {
                        dist[nb] = dist[idx] + 1;
                        queue.push_back(nb);
                    }
                }
            }
        }
        dist
    }

    /// Rejects velocity fields with a nonzero normal component on any
    /// wall-adjacent face: for every site whose neighbor along an axis
    /// has a different solid/fluid status, the velocity component along
    /// that axis must vanish at both sites.
    pub fn check_velocity(&self, u: &VelocityField) -> Result<(), LatticeError> {
        if u.grid != self.grid {
            return Err(LatticeError::GridMismatch(
                "velocity grid differs from wall mask grid".into(),
            ));
        }
        for idx in 0..self.grid.sites() {
            for axis in 0..self.grid.dims {
                for delta in [-1i64, 1] {
                    let nb = self.grid.shift(idx, axis, delta);
                    if self.solid[nb] != self.solid[idx] && u.data[idx][axis].abs() > 1e-14 {
                        return Err(LatticeError::InvalidField(format!(
                            "normal velocity {:.3e} along axis {axis} at wall-adjacent site {idx}",
                            u.data[idx][axis]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Rejects densities with mass on wall sites.
    pub fn check_scalar(&self, phi: &ScalarField) -> Result<(), LatticeError> {
        if phi.grid != self.grid {
            return Err(LatticeError::GridMismatch(
                "density grid differs from wall mask grid".into(),
            ));
        }
        for (idx, &s) in self.solid.iter().enumerate() {
            if s && phi.data[idx] != 0.0 {
                return Err(LatticeError::InvalidField(format!(
                    "density {} on wall site {idx}",
                    phi.data[idx]
                )));
            }
        }
        Ok(())
    }

    /// Zeroes wall-site entries of a density field in place.
    pub fn clear_walls(&self, phi: &mut ScalarField) {
        for (v, &s) in phi.data.iter_mut().zip(&self.solid) {
            if s {
                *v = 0.0;
            }
        }
    }
}

/// Per-site wall adjacency pattern: bit `i-1` is set iff the neighbor in
/// direction `i` (for `i = 1..=2d`) is a wall site. Wall sites carry
/// pattern zero; their amplitudes are identically zero anyway.
#[derive(Clone, Debug)]
pub struct WallFlags {
    pub grid: GridSpec,
    pub q: usize,
    pub pattern: Vec<u8>,
}

impl WallFlags {
    pub fn is_trivial(&self) -> bool {
        self.pattern.iter().all(|&p| p == 0)
    }
}

/// Computes the wall adjacency flags for every fluid site.
pub fn wall_flags(mask: &WallMask, model: &LatticeModel) -> WallFlags {
    let grid = mask.grid;
    let mut pattern = vec![0u8; grid.sites()];
    for site in 0..grid.sites() {
        if mask.is_wall(site) {
            continue;
        }
        let mut p = 0u8;
        for i in 1..model.q {
            let nb = grid.shift_vec(site, model.directions[i]);
            if mask.is_wall(nb) {
                p |= 1 << (i - 1);
            }
        }
        pattern[site] = p;
    }
    WallFlags {
        grid,
        q: model.q,
        pattern,
    }
}

/// Fold rotations per wall pattern.
///
/// For a pattern the blocked directions `j` are handled in ascending
/// order; rotation `j` maps the (rest, j) one-hot amplitude pair
/// `(a_0, a_j)` to `(sqrt(a_0^2 + a_j^2), 0)`. Angles accumulate the
/// previously folded weight, so corner patterns are zeroed exactly.
#[derive(Clone, Debug)]
pub struct CorrectionPlan {
    pub q: usize,
    /// Indexed by pattern; each entry lists `(direction, angle)`.
    pub fold_sequences: Vec<Vec<(usize, f64)>>,
}

/// How a correction pass pairs with the collision operators.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CorrectionStage {
    /// After the weight-loading operator: zero streaming into walls.
    Prep,
    /// Before the recombination operator: block contributions that would
    /// arrive from wall sites (the mirrored direction of each flag).
    Unprep,
}

/// Builds the correction plan for every reachable flag pattern of the model.
pub fn build_correction_plan(model: &LatticeModel) -> CorrectionPlan {
    let blocked_dirs = model.q - 1;
    let mut fold_sequences = Vec::with_capacity(1 << blocked_dirs);
    for pattern in 0u8..(1 << blocked_dirs) {
        let mut seq = Vec::new();
        let mut acc = model.weights[0];
        for j in 1..model.q {
            if pattern & (1 << (j - 1)) != 0 {
                let w = model.weights[j];
                let angle = (w / (acc + w)).sqrt().asin();
                seq.push((j, angle));
                acc += w;
            }
        }
        fold_sequences.push(seq);
    }
    CorrectionPlan {
        q: model.q,
        fold_sequences,
    }
}

/// Mirrors a flag pattern within each axis pair (swap +axis and -axis bits).
fn mirror_pattern(pattern: u8, q: usize) -> u8 {
    let mut out = 0u8;
    for axis in 0..(q - 1) / 2 {
        let plus = pattern >> (2 * axis) & 1;
        let minus = pattern >> (2 * axis + 1) & 1;
        out |= minus << (2 * axis);
        out |= plus << (2 * axis + 1);
    }
    out
}

/// Applies the per-site correction rotations to a statevector.
///
/// `Prep` folds each blocked one-hot amplitude into the rest state
/// (apply right after the weight-loading operator). `Unprep` applies the
/// inverse rotations of the mirrored pattern (apply right before the
/// recombination operator), so the recombination row sees zero weight on
/// directions arriving from wall sites.
pub fn apply_wall_corrections(
    state: &mut StateVector,
    flags: &WallFlags,
    plan: &CorrectionPlan,
    stage: CorrectionStage,
) -> Result<(), WallError> {
    if state.layout.grid_qubits != flags.grid.qubits() || state.layout.dir_qubits != flags.q {
        return Err(WallError::LayoutMismatch(format!(
            "state has {} grid / {} direction qubits, flags expect {} / {}",
            state.layout.grid_qubits,
            state.layout.dir_qubits,
            flags.grid.qubits(),
            flags.q
        )));
    }
    let rest = state.layout.dir_index(0);
    for site in 0..flags.grid.sites() {
        let pattern = flags.pattern[site];
        if pattern == 0 {
            continue;
        }
        match stage {
            CorrectionStage::Prep => {
                let seq = fold_sequence(plan, pattern)?;
                for &(j, angle) in seq {
                    state.rotate_pair(
                        state.layout.index(site, rest),
                        state.layout.index(site, state.layout.dir_index(j)),
                        angle,
                    );
                }
            }
            CorrectionStage::Unprep => {
                let mirrored = mirror_pattern(pattern, flags.q);
                let seq = fold_sequence(plan, mirrored)?;
                for &(j, angle) in seq.iter().rev() {
                    state.rotate_pair(
                        state.layout.index(site, rest),
                        state.layout.index(site, state.layout.dir_index(j)),
                        -angle,
                    );
                }
            }
        }
    }
    Ok(())
}

fn fold_sequence(plan: &CorrectionPlan, pattern: u8) -> Result<&Vec<(usize, f64)>, WallError> {
    plan.fold_sequences
        .get(pattern as usize)
        .ok_or(WallError::MissingPattern(pattern))
}

/// Convenience constructors for masks made of axis-aligned primitives.
pub mod shapes {
    use super::WallMask;
    use crate::lattice::{GridSpec, LatticeError};

    /// Full slab(s) `coordinate == value` perpendicular to `axis`.
    pub fn slab(grid: GridSpec, axis: usize, values: &[usize]) -> Result<WallMask, LatticeError> {
        let mut solid = vec![false; grid.sites()];
        for idx in 0..grid.sites() {
            if values.contains(&grid.coords(idx)[axis]) {
                solid[idx] = true;
            }
        }
        WallMask::new(grid, solid)
    }

    /// Axis-aligned box with inclusive bounds.
    pub fn boxed(
        grid: GridSpec,
        min: [usize; 3],
        max: [usize; 3],
    ) -> Result<WallMask, LatticeError> {
        let mut solid = vec![false; grid.sites()];
        for idx in 0..grid.sites() {
            let c = grid.coords(idx);
            if (0..grid.dims).all(|a| c[a] >= min[a] && c[a] <= max[a]) {
                solid[idx] = true;
            }
        }
        WallMask::new(grid, solid)
    }

    /// Union of two masks.
    pub fn union(a: &WallMask, b: &WallMask) -> Result<WallMask, LatticeError> {
        if a.grid != b.grid {
            return Err(LatticeError::GridMismatch(
                "cannot union masks on different grids".into(),
            ));
        }
        WallMask::new(
            a.grid,
            a.solid
                .iter()
                .zip(&b.solid)
                .map(|(&x, &y)| x || y)
                .collect(),
        )
    }
}
