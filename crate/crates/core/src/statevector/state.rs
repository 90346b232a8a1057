use super::RegisterLayout;
use num_complex::Complex64;

/// Dense complex statevector over the full register stack.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub layout: RegisterLayout,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    /// All-zeros basis state.
    pub fn zero_state(layout: RegisterLayout) -> Self {
        let mut amps = vec![Complex64::ZERO; layout.len()];
        amps[0] = Complex64::ONE;
        StateVector { layout, amps }
    }

    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), layout.len());
        StateVector { layout, amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn renormalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    /// Real Givens rotation of the amplitude pair `(ia, ib)`:
    /// `a' = cos t * a + sin t * b`, `b' = -sin t * a + cos t * b`.
    #[inline]
    pub fn rotate_pair(&mut self, ia: usize, ib: usize, theta: f64) {
        let (c, s) = (theta.cos(), theta.sin());
        let a = self.amps[ia];
        let b = self.amps[ib];
        self.amps[ia] = c * a + s * b;
        self.amps[ib] = -s * a + c * b;
    }

    /// RBS gate on the ordered global-qubit pair `(qa, qb)`: within the
    /// one-of-two-set subspace, the `qa`-set amplitude picks up
    /// `cos t * a + sin t * b` and the `qb`-set amplitude
    /// `-sin t * a + cos t * b`; `|00>` and `|11>` components are fixed.
    pub fn apply_rbs(&mut self, qa: usize, qb: usize, theta: f64) {
        let (ma, mb) = (1usize << qa, 1usize << qb);
        let swap = ma | mb;
        let (c, s) = (theta.cos(), theta.sin());
        for idx in 0..self.amps.len() {
            if idx & ma != 0 && idx & mb == 0 {
                let partner = idx ^ swap;
                let a = self.amps[idx];
                let b = self.amps[partner];
                self.amps[idx] = c * a + s * b;
                self.amps[partner] = -s * a + c * b;
            }
        }
    }

    /// RBS on a direction-qubit pair whose angle depends on the grid value.
    pub fn apply_grid_controlled_rbs(&mut self, qa: usize, qb: usize, angles: &[f64]) {
        debug_assert_eq!(angles.len(), self.layout.grid_len());
        let (ma, mb) = (1usize << qa, 1usize << qb);
        let swap = ma | mb;
        for idx in 0..self.amps.len() {
            if idx & ma != 0 && idx & mb == 0 {
                let theta = angles[self.layout.grid_value(idx)];
                let (c, s) = (theta.cos(), theta.sin());
                let partner = idx ^ swap;
                let a = self.amps[idx];
                let b = self.amps[partner];
                self.amps[idx] = c * a + s * b;
                self.amps[partner] = -s * a + c * b;
            }
        }
    }

    /// Pauli X on one qubit.
    pub fn apply_x(&mut self, q: usize) {
        let m = 1usize << q;
        for idx in 0..self.amps.len() {
            if idx & m == 0 {
                self.amps.swap(idx, idx | m);
            }
        }
    }

    /// CNOT with the given control and target qubits.
    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let (mc, mt) = (1usize << control, 1usize << target);
        for idx in 0..self.amps.len() {
            if idx & mc != 0 && idx & mt == 0 {
                self.amps.swap(idx, idx | mt);
            }
        }
    }

    /// Two-level Givens rotation between direction-register values
    /// `(va, vb)`, applied uniformly over the grid register.
    pub fn apply_dir_two_level(&mut self, va: usize, vb: usize, theta: f64) {
        for grid in 0..self.layout.grid_len() {
            self.rotate_pair(
                self.layout.index(grid, va),
                self.layout.index(grid, vb),
                theta,
            );
        }
    }

    /// Arbitrary single-qubit gate `[[m00, m01], [m10, m11]]`.
    pub fn apply_single_qubit(&mut self, q: usize, m: &[[Complex64; 2]; 2]) {
        let mask = 1usize << q;
        for idx in 0..self.amps.len() {
            if idx & mask == 0 {
                let hi = idx | mask;
                let a = self.amps[idx];
                let b = self.amps[hi];
                self.amps[idx] = m[0][0] * a + m[0][1] * b;
                self.amps[hi] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    /// Phase flip on basis states where both qubits are set.
    pub fn apply_cz(&mut self, qa: usize, qb: usize) {
        let m = (1usize << qa) | (1usize << qb);
        for (idx, amp) in self.amps.iter_mut().enumerate() {
            if idx & m == m {
                *amp = -*amp;
            }
        }
    }

    /// Squared overlap with another state.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        let dot: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        dot.norm_sqr() / (self.norm().powi(2) * other.norm().powi(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rbs_rotates_one_excitation_subspace_only() {
        let layout = RegisterLayout::new(0, 2);
        let theta = 0.3f64;
        // |01> (qubit 0 set)
        let mut s = StateVector::zero_state(layout);
        s.amps[0] = Complex64::ZERO;
        s.amps[0b01] = Complex64::ONE;
        s.apply_rbs(0, 1, theta);
        assert!((s.amps[0b01].re - theta.cos()).abs() < 1e-15);
        assert!((s.amps[0b10].re + theta.sin()).abs() < 1e-15);
        // |00> and |11> are fixed points.
        let mut s = StateVector::zero_state(layout);
        s.apply_rbs(0, 1, theta);
        assert_eq!(s.amps[0], Complex64::ONE);
        let mut s = StateVector::zero_state(layout);
        s.amps[0] = Complex64::ZERO;
        s.amps[0b11] = Complex64::ONE;
        s.apply_rbs(0, 1, theta);
        assert_eq!(s.amps[0b11], Complex64::ONE);
    }

    #[test]
    fn gates_preserve_norm() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let layout = RegisterLayout::new(3, 2);
        let amps: Vec<Complex64> = (0..layout.len())
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let mut s = StateVector::from_amplitudes(layout, amps);
        s.renormalize();
        s.apply_rbs(1, 3, 0.7);
        s.apply_x(2);
        s.apply_cnot(0, 4);
        s.apply_cz(1, 2);
        s.apply_dir_two_level(0b01, 0b11, 0.4);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }
}
