use super::{fwht, SparseSpectrum, TransformError};

/// One gate of a compiled rotation program.
#[derive(Clone, Debug, PartialEq)]
pub enum GateOp {
    /// Uncontrolled RBS on the program's target direction pair.
    Rbs {
        angle: f64,
        /// Walsh-Hadamard index the angle came from.
        spectrum_index: usize,
    },
    /// Sign toggle: a controlled phase flip from a grid qubit onto the
    /// first qubit of the target pair. Within the one-excitation
    /// subspace this negates subsequent rotation angles for grid values
    /// with that bit set.
    SignToggle { grid_qubit: usize },
}

/// A grid-value-controlled rotation compiled into single-control gates:
/// rotations interleaved with Gray-code sign toggles. Executing it on a
/// direction pair reproduces `sum_r |r><r| (x) RBS(theta(r))` up to the
/// pruned coefficients.
#[derive(Clone, Debug)]
pub struct GateProgram {
    /// Number of grid control qubits.
    pub n_controls: usize,
    pub ops: Vec<GateOp>,
    /// Sum of the absolute values of pruned coefficients; bounds the
    /// worst-case angle error of the program.
    pub dropped_weight: f64,
}

impl GateProgram {
    pub fn rotation_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, GateOp::Rbs { .. }))
            .count()
    }

    pub fn toggle_count(&self) -> usize {
        self.ops.len() - self.rotation_count()
    }

    /// Net rotation angle the program applies at one grid value.
    pub fn effective_angle(&self, grid_value: usize) -> f64 {
        let mut parity = 0usize;
        let mut angle = 0.0;
        for op in &self.ops {
            match op {
                GateOp::SignToggle { grid_qubit } => {
                    parity ^= (grid_value >> grid_qubit) & 1;
                }
                GateOp::Rbs { angle: a, .. } => {
                    angle += if parity == 0 { *a } else { -*a };
                }
            }
        }
        angle
    }
}

fn gray(k: usize) -> usize {
    k ^ (k >> 1)
}

fn synthesize(
    coefficient: impl Fn(usize) -> f64,
    n_controls: usize,
    threshold: f64,
) -> GateProgram {
    let n = 1usize << n_controls;
    let mut ops = Vec::new();
    let mut pending = 0usize;
    let mut dropped_weight = 0.0;
    for k in 0..n {
        let angle = coefficient(gray(k));
        if angle != 0.0 && angle.abs() >= threshold {
            let mut mask = pending;
            while mask != 0 {
                let bit = mask.trailing_zeros() as usize;
                ops.push(GateOp::SignToggle { grid_qubit: bit });
                mask &= mask - 1;
            }
            pending = 0;
            ops.push(GateOp::Rbs {
                angle,
                spectrum_index: gray(k),
            });
        } else {
            dropped_weight += angle.abs();
        }
        let toggle_bit = if k + 1 < n {
            (k + 1).trailing_zeros() as usize
        } else {
            n_controls.saturating_sub(1)
        };
        if n_controls > 0 {
            pending ^= 1 << toggle_bit;
        }
    }
    let mut mask = pending;
    while mask != 0 {
        let bit = mask.trailing_zeros() as usize;
        ops.push(GateOp::SignToggle { grid_qubit: bit });
        mask &= mask - 1;
    }
    GateProgram {
        n_controls,
        ops,
        dropped_weight,
    }
}

/// Compiles a dense per-grid-value angle field (length `2^n`) into a
/// rotation program, pruning rotations whose Walsh-Hadamard coefficient
/// is below the threshold (exact zeros are always dropped).
pub fn qpixl_program(angles: &[f64], threshold: f64) -> Result<GateProgram, TransformError> {
    if !angles.len().is_power_of_two() {
        return Err(TransformError::NotPowerOfTwo(angles.len()));
    }
    let mut spectrum = angles.to_vec();
    fwht(&mut spectrum)?;
    let n_controls = angles.len().trailing_zeros() as usize;
    Ok(synthesize(|i| spectrum[i], n_controls, threshold))
}

/// Compiles a precomputed sparse spectrum (for smooth fields on large
/// grids, where the dense transform is the bottleneck).
pub fn qpixl_program_from_spectrum(
    spectrum: &SparseSpectrum,
    threshold: f64,
) -> GateProgram {
    let len = spectrum.side.pow(3);
    let n_controls = len.trailing_zeros() as usize;
    synthesize(|i| spectrum.get(i), n_controls, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::{RegisterLayout, StateVector};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn execute(program: &GateProgram, state: &mut StateVector, qa: usize, qb: usize) {
        for op in &program.ops {
            match op {
                GateOp::Rbs { angle, .. } => state.apply_rbs(qa, qb, *angle),
                GateOp::SignToggle { grid_qubit } => state.apply_cz(*grid_qubit, qa),
            }
        }
    }

    fn random_angles(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..1usize << n)
            .map(|_| rng.gen_range(0.0..std::f64::consts::FRAC_PI_2))
            .collect()
    }

    fn random_state(layout: RegisterLayout, seed: u64) -> StateVector {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut amps: Vec<Complex64> = (0..layout.len())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        StateVector::from_amplitudes(layout, amps)
    }

    #[test]
    fn constant_field_compiles_to_single_rotation() {
        let program = qpixl_program(&[0.4; 8], 0.0).unwrap();
        assert_eq!(program.rotation_count(), 1);
        assert_eq!(program.toggle_count(), 0);
        assert!(matches!(
            program.ops[0],
            GateOp::Rbs { spectrum_index: 0, .. }
        ));
    }

    #[test]
    fn infinite_threshold_gives_empty_program() {
        let program = qpixl_program(&random_angles(3, 1), f64::INFINITY).unwrap();
        assert!(program.ops.is_empty());
        assert!(program.dropped_weight > 0.0);
    }

    #[test]
    fn unpruned_program_matches_dense_controlled_rotation() {
        let n = 3;
        let angles = random_angles(n, 7);
        let program = qpixl_program(&angles, 0.0).unwrap();
        assert_eq!(program.rotation_count(), 1 << n);
        assert_eq!(program.toggle_count(), 1 << n);
        let layout = RegisterLayout::new(n, 2);
        let reference = {
            let mut s = random_state(layout, 3);
            s.apply_grid_controlled_rbs(layout.dir_qubit(0), layout.dir_qubit(1), &angles);
            s
        };
        let mut compiled = random_state(layout, 3);
        execute(
            &program,
            &mut compiled,
            layout.dir_qubit(0),
            layout.dir_qubit(1),
        );
        for (a, b) in compiled.amps.iter().zip(&reference.amps) {
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn effective_angles_reproduce_field_and_error_bound_holds() {
        let n = 4;
        let angles = random_angles(n, 11);
        for threshold in [0.0, 1e-3, 1e-2, 0.1] {
            let program = qpixl_program(&angles, threshold).unwrap();
            for (r, &target) in angles.iter().enumerate() {
                let err = (program.effective_angle(r) - target).abs();
                assert!(
                    err <= program.dropped_weight + 1e-12,
                    "threshold {threshold}: angle error {err} > bound {}",
                    program.dropped_weight
                );
            }
        }
    }

    #[test]
    fn pruning_error_is_monotone_in_threshold() {
        let n = 4;
        let angles = random_angles(n, 23);
        let mut last = -1.0;
        for threshold in [0.0, 1e-4, 1e-3, 1e-2, 0.1, 1.0] {
            let program = qpixl_program(&angles, threshold).unwrap();
            let worst: f64 = (0..1usize << n)
                .map(|r| (program.effective_angle(r) - angles[r]).abs())
                .fold(0.0, f64::max);
            assert!(worst >= last - 1e-12);
            last = worst;
        }
    }

    #[test]
    fn sparse_spectrum_program_matches_dense_program() {
        use crate::lattice::GridSpec;
        let grid = GridSpec::new(3, 4).unwrap();
        let field_data: Vec<f64> = (0..grid.sites())
            .map(|idx| {
                let [x, y, z] = grid.coords(idx);
                0.3 + 0.02 * x as f64 + 0.01 * y as f64 - 0.015 * z as f64
            })
            .collect();
        let field = crate::lattice::ScalarField {
            grid,
            data: field_data.clone(),
        };
        let sparse = crate::velocity::interpolated_fwht_3d(&field, 4).unwrap();
        let dense_program = qpixl_program(&field_data, 0.0).unwrap();
        let sparse_program = qpixl_program_from_spectrum(&sparse, 0.0);
        for r in 0..grid.sites() {
            assert!(
                (dense_program.effective_angle(r) - sparse_program.effective_angle(r)).abs()
                    < 1e-12
            );
        }
    }
}
