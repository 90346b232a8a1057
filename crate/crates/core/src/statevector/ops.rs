use super::{RegisterLayout, StateError, StateVector};
use crate::lattice::{collision_kernels, LatticeModel, ScalarField, VelocityField};
use crate::velocity::{prep_angles, unprep_angles};
use crate::walls::{apply_wall_corrections, CorrectionPlan, CorrectionStage, WallFlags};
use num_complex::Complex64;

/// How the collision isometries are realized.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Route {
    /// Direct amplitude maps (weight scatter / Householder recombination).
    #[default]
    Isometry,
    /// The RBS + CNOT gate sequences driven by the arccos angle fields.
    Gates,
}

/// Wall data threaded through the collision operators.
#[derive(Clone, Debug)]
pub struct WallContext {
    pub flags: WallFlags,
    pub plan: CorrectionPlan,
}

impl WallContext {
    pub fn new(flags: WallFlags, plan: CorrectionPlan) -> Self {
        WallContext { flags, plan }
    }
}

/// Loads a density field into the grid register:
/// `|r>|0...0>` carries `phi(r) / ||phi||`.
pub fn encode_density(
    phi: &ScalarField,
    layout: RegisterLayout,
) -> Result<StateVector, StateError> {
    if layout.grid_len() != phi.grid.sites() {
        return Err(StateError::LayoutMismatch(format!(
            "layout has {} grid states for {} sites",
            layout.grid_len(),
            phi.grid.sites()
        )));
    }
    if phi.data.iter().any(|&v| v < 0.0) {
        return Err(StateError::Domain(
            "density field has negative entries".into(),
        ));
    }
    let norm = phi.l2_norm();
    if norm == 0.0 {
        return Err(StateError::Domain("density field is identically zero".into()));
    }
    let mut amps = vec![Complex64::ZERO; layout.len()];
    for (site, &v) in phi.data.iter().enumerate() {
        amps[layout.index(site, 0)] = Complex64::new(v / norm, 0.0);
    }
    Ok(StateVector::from_amplitudes(layout, amps))
}

/// Grid amplitudes of the all-zeros direction sector, as a scalar field.
pub fn grid_sector(state: &StateVector, grid: crate::lattice::GridSpec) -> ScalarField {
    let data = (0..state.layout.grid_len())
        .map(|site| state.amps[state.layout.index(site, 0)].re)
        .collect();
    ScalarField { grid, data }
}

/// Streaming: every one-hot direction sector `|i_H>` has its grid index
/// shifted by the lattice vector `c_i`, periodically. All other
/// direction sectors (including all-zeros, and the rest direction whose
/// shift is the identity) are untouched.
pub fn apply_streaming(state: &mut StateVector, model: &LatticeModel, grid: crate::lattice::GridSpec) {
    let layout = state.layout;
    debug_assert_eq!(layout.grid_len(), grid.sites());
    let mut scratch = vec![Complex64::ZERO; layout.grid_len()];
    for i in 1..model.q {
        let dir = layout.dir_index(i);
        let base = layout.index(0, dir);
        let block = &mut state.amps[base..base + layout.grid_len()];
        for (site, amp) in block.iter().enumerate() {
            scratch[grid.shift_vec(site, model.directions[i])] = *amp;
        }
        block.copy_from_slice(&scratch);
    }
}

fn check_rest_sector_only(state: &StateVector) -> Result<(), StateError> {
    let grid_len = state.layout.grid_len();
    let leak: f64 = state.amps[grid_len..]
        .iter()
        .map(|a| a.norm_sqr())
        .sum();
    if leak > 1e-20 {
        return Err(StateError::Precondition(format!(
            "population {leak:.3e} outside the all-zeros direction sector before PREP"
        )));
    }
    Ok(())
}

fn check_one_hot_span(state: &StateVector) -> Result<(), StateError> {
    let layout = state.layout;
    let mut leak = 0.0;
    for (idx, amp) in state.amps.iter().enumerate() {
        if layout.dir_value(idx).count_ones() != 1 {
            leak += amp.norm_sqr();
        }
    }
    if leak > 1e-20 {
        return Err(StateError::Precondition(format!(
            "population {leak:.3e} outside the one-hot direction span before UNPREP"
        )));
    }
    Ok(())
}

/// Square roots of the collision kernels, site-major.
fn sqrt_kernels(
    model: &LatticeModel,
    u: &VelocityField,
) -> Result<Vec<f64>, StateError> {
    let kernels = collision_kernels(model, u, None)?;
    Ok(kernels.data.iter().map(|k| k.sqrt()).collect())
}

/// PREP: `|r>|0...0> -> |r> sum_i sqrt(k_i(r)) |i_H>`, with the wall
/// fold rotations applied afterwards when a wall context is given.
pub fn apply_prep(
    state: &mut StateVector,
    u: &VelocityField,
    model: &LatticeModel,
    route: Route,
    walls: Option<&WallContext>,
) -> Result<(), StateError> {
    check_rest_sector_only(state)?;
    let layout = state.layout;
    match route {
        Route::Isometry => {
            let sqrt_k = sqrt_kernels(model, u)?;
            for site in 0..layout.grid_len() {
                let a = state.amps[layout.index(site, 0)];
                state.amps[layout.index(site, 0)] = Complex64::ZERO;
                if a != Complex64::ZERO {
                    for i in 0..model.q {
                        state.amps[layout.index(site, layout.dir_index(i))] =
                            a * sqrt_k[site * model.q + i];
                    }
                }
            }
        }
        Route::Gates => {
            // Fixed tree: spread the rest weight and one slot per axis,
            // then split each axis pair by its grid-controlled angle.
            let d = |k: usize| layout.dir_qubit(k);
            let w0 = model.weights[0];
            let pair = 2.0 * model.weights[1];
            state.apply_x(d(1));
            state.apply_rbs(d(0), d(1), w0.sqrt().asin());
            state.apply_rbs(d(3), d(1), (pair / (1.0 - w0)).sqrt().acos());
            if model.dims == 3 {
                state.apply_rbs(d(5), d(3), std::f64::consts::FRAC_PI_4);
            }
            for axis in 0..model.dims {
                let angles =
                    prep_angles(u, axis).map_err(|e| StateError::Domain(e.to_string()))?;
                state.apply_grid_controlled_rbs(
                    d(2 * axis + 2),
                    d(2 * axis + 1),
                    &angles.data,
                );
            }
        }
    }
    if let Some(ctx) = walls {
        apply_wall_corrections(state, &ctx.flags, &ctx.plan, CorrectionStage::Prep)
            .map_err(|e| StateError::Precondition(e.to_string()))?;
    }
    Ok(())
}

/// UNPREP: recombines the streamed one-hot weights into the all-zeros
/// direction sector, so that sector's amplitude at `r` becomes
/// `sum_i sqrt(k_i(r - c_i)) <r, i_H | state>`. Wall corrections (the
/// inverse fold rotations of the mirrored pattern) are applied first
/// when a wall context is given.
pub fn apply_unprep(
    state: &mut StateVector,
    u: &VelocityField,
    model: &LatticeModel,
    route: Route,
    walls: Option<&WallContext>,
) -> Result<(), StateError> {
    check_one_hot_span(state)?;
    if let Some(ctx) = walls {
        apply_wall_corrections(state, &ctx.flags, &ctx.plan, CorrectionStage::Unprep)
            .map_err(|e| StateError::Precondition(e.to_string()))?;
    }
    let layout = state.layout;
    let grid = u.grid;
    match route {
        Route::Isometry => {
            // Per site, reflect the direction slice through the
            // Householder vector v = w - e_0, where w holds the shifted
            // kernel square roots on the one-hot entries. The reflection
            // is exactly unitary and its all-zeros row is w (up to the
            // divergence-free normalization of w).
            let sqrt_k = sqrt_kernels(model, u)?;
            let q = model.q;
            let mut w = vec![0.0f64; q];
            for site in 0..layout.grid_len() {
                let mut norm_sq = 1.0; // v[0] = -1 contributes 1
                for i in 0..q {
                    let src = grid.shift_vec(site, [
                        -model.directions[i][0],
                        -model.directions[i][1],
                        -model.directions[i][2],
                    ]);
                    w[i] = sqrt_k[src * q + i];
                    norm_sq += w[i] * w[i];
                }
                let rest = layout.index(site, 0);
                let mut dot = -state.amps[rest];
                for (i, &wi) in w.iter().enumerate() {
                    dot += wi * state.amps[layout.index(site, layout.dir_index(i))];
                }
                let scale = dot * (2.0 / norm_sq);
                state.amps[rest] += scale;
                for (i, &wi) in w.iter().enumerate() {
                    state.amps[layout.index(site, layout.dir_index(i))] -= scale * wi;
                }
            }
        }
        Route::Gates => {
            // Inverse of the column-preparation program: reversed gates
            // with negated angles.
            let d = |k: usize| layout.dir_qubit(k);
            let angles = unprep_angles(u, model).map_err(|e| StateError::Domain(e.to_string()))?;
            let w0 = model.weights[0];
            for axis in (0..model.dims).rev() {
                let neg: Vec<f64> = angles.per_axis[axis].data.iter().map(|a| -a).collect();
                state.apply_grid_controlled_rbs(d(2 * axis + 2), d(2 * axis + 1), &neg);
            }
            for axis in (0..model.dims).rev() {
                state.apply_cnot(d(2 * axis + 1), d(0));
            }
            if model.dims == 3 {
                let neg: Vec<f64> = angles.mu.as_ref().unwrap().data.iter().map(|a| -a).collect();
                state.apply_grid_controlled_rbs(d(5), d(3), &neg);
            }
            let neg: Vec<f64> = angles.lambda.data.iter().map(|a| -a).collect();
            state.apply_grid_controlled_rbs(d(3), d(1), &neg);
            state.apply_dir_two_level(0b11, 0b01, -(w0.sqrt().acos()));
            state.apply_x(d(0));
        }
    }
    Ok(())
}

/// Projects onto the all-zeros direction sector. Returns the
/// renormalized grid state and the success probability (the squared
/// norm of the projection).
pub fn postselect(state: &StateVector) -> Result<(StateVector, f64), StateError> {
    let layout = state.layout;
    let grid_len = layout.grid_len();
    let p: f64 = state.amps[..grid_len].iter().map(|a| a.norm_sqr()).sum();
    if p < 1e-15 {
        return Err(StateError::DegenerateProjection(p));
    }
    let scale = 1.0 / p.sqrt();
    let amps = state.amps[..grid_len].iter().map(|a| a * scale).collect();
    Ok((
        StateVector::from_amplitudes(RegisterLayout::new(layout.grid_qubits, 0), amps),
        p,
    ))
}

/// Projects the full-register state onto the all-zeros direction sector
/// in place and renormalizes; returns the success probability.
pub fn project_rest_sector(state: &mut StateVector) -> Result<f64, StateError> {
    let grid_len = state.layout.grid_len();
    let p: f64 = state.amps[..grid_len].iter().map(|a| a.norm_sqr()).sum();
    if p < 1e-15 {
        return Err(StateError::DegenerateProjection(p));
    }
    let scale = 1.0 / p.sqrt();
    for (idx, amp) in state.amps.iter_mut().enumerate() {
        *amp = if idx < grid_len {
            *amp * scale
        } else {
            Complex64::ZERO
        };
    }
    Ok(p)
}

/// One full QLBM step (PREP, streaming, UNPREP, projective
/// post-selection), with wall corrections spliced in when given. The
/// state is left renormalized in the all-zeros direction sector; the
/// returned value is the post-selection success probability.
pub fn qlbm_step(
    state: &mut StateVector,
    u: &VelocityField,
    model: &LatticeModel,
    route: Route,
    walls: Option<&WallContext>,
) -> Result<f64, StateError> {
    apply_prep(state, u, model, route, walls)?;
    apply_streaming(state, model, u.grid);
    apply_unprep(state, u, model, route, walls)?;
    project_rest_sector(state)
}

/// Result of a multi-step exact chain.
#[derive(Clone, Debug)]
pub struct ChainResult {
    /// Renormalized grid amplitudes after each step, `trajectory[0]`
    /// being the encoded initial state.
    pub trajectory: Vec<ScalarField>,
    /// Per-step post-selection success probabilities.
    pub step_probabilities: Vec<f64>,
    /// Product of the per-step probabilities, equal to
    /// `||phi_T||^2 / ||phi_0||^2`.
    pub cumulative_probability: f64,
    /// Final full-register state (all-zeros direction sector populated).
    pub final_state: StateVector,
}

/// Runs `steps` QLBM steps with a projective direction-register reset
/// after each one.
pub fn run_chain(
    phi0: &ScalarField,
    u: &VelocityField,
    model: &LatticeModel,
    steps: usize,
    route: Route,
    walls: Option<&WallContext>,
) -> Result<ChainResult, StateError> {
    let layout = RegisterLayout::for_model(phi0.grid, model);
    let mut state = encode_density(phi0, layout)?;
    let mut trajectory = vec![grid_sector(&state, phi0.grid)];
    let mut step_probabilities = Vec::with_capacity(steps);
    let mut cumulative = 1.0;
    for _ in 0..steps {
        let p = qlbm_step(&mut state, u, model, route, walls)?;
        cumulative *= p;
        step_probabilities.push(p);
        trajectory.push(grid_sector(&state, phi0.grid));
    }
    Ok(ChainResult {
        trajectory,
        step_probabilities,
        cumulative_probability: cumulative,
        final_state: state,
    })
}
