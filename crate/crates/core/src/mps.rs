//! Matrix-product-state representation of grid-register amplitudes.
//!
//! Site order follows the register layout: site 0 is the lowest grid
//! qubit (x bit 0), dimension-blocked x, y, z. Compression is a
//! left-to-right sweep of thin SVDs with rank truncation, so bond k
//! carries the Schmidt spectrum across the cut after qubit k, truncated
//! to the requested bond dimension.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MpsError {
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("resource limit: {0} qubits exceeds the desk-scale cap of 24")]
    TooLarge(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),
}

/// Chain of rank-3 tensors `[left_bond, 2, right_bond]`, stored
/// row-major per site. Boundary bonds have dimension one.
#[derive(Clone, Debug)]
pub struct Mps {
    pub tensors: Vec<Tensor3>,
}

/// One MPS site tensor, row-major over `(left, physical, right)`.
#[derive(Clone, Debug)]
pub struct Tensor3 {
    pub left: usize,
    pub right: usize,
    pub data: Vec<Complex64>,
}

impl Tensor3 {
    pub fn zeros(left: usize, right: usize) -> Self {
        Tensor3 {
            left,
            right,
            data: vec![Complex64::ZERO; left * 2 * right],
        }
    }

    #[inline]
    pub fn at(&self, l: usize, s: usize, r: usize) -> Complex64 {
        self.data[(l * 2 + s) * self.right + r]
    }

    #[inline]
    pub fn at_mut(&mut self, l: usize, s: usize, r: usize) -> &mut Complex64 {
        &mut self.data[(l * 2 + s) * self.right + r]
    }

    /// The 1 x right (or left x right) matrix for a fixed physical index.
    pub fn slice(&self, s: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.left, self.right, |l, r| self.at(l, s, r))
    }
}

impl Mps {
    pub fn sites(&self) -> usize {
        self.tensors.len()
    }

    /// Largest internal bond dimension.
    pub fn bond_dimension(&self) -> usize {
        self.tensors.iter().map(|t| t.right).max().unwrap_or(1)
    }

    /// Total parameter count (bounded by `2 n chi^2`).
    pub fn parameter_count(&self) -> usize {
        self.tensors.iter().map(|t| t.data.len()).sum()
    }

    /// `<psi|psi>` via the transfer-matrix contraction.
    pub fn norm_sqr(&self) -> f64 {
        // env[l1, l2] accumulates conj(psi) x psi over processed sites.
        let mut env = DMatrix::from_element(1, 1, Complex64::ONE);
        for t in &self.tensors {
            let mut next = DMatrix::zeros(t.right, t.right);
            for s in 0..2 {
                let m = t.slice(s);
                next += m.adjoint() * &env * &m;
            }
            env = next;
        }
        env[(0, 0)].re
    }

    /// Rescales every tensor so the contracted norm is one.
    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            let sites = self.sites() as f64;
            let per_site = n.powf(1.0 / sites);
            for t in &mut self.tensors {
                for v in &mut t.data {
                    *v /= per_site;
                }
            }
        }
    }
}

/// Compresses a length `2^n` amplitude vector to an MPS with bond
/// dimension at most `chi` by successive truncated SVDs, then
/// normalizes. Degenerate singular values are resolved in descending
/// value, ascending index order, so compression is deterministic.
pub fn compress(amplitudes: &[Complex64], chi: usize) -> Result<Mps, MpsError> {
    if !amplitudes.len().is_power_of_two() || amplitudes.len() < 2 {
        return Err(MpsError::NotPowerOfTwo(amplitudes.len()));
    }
    if chi == 0 {
        return Err(MpsError::Domain("bond dimension must be at least 1".into()));
    }
    let n = amplitudes.len().trailing_zeros() as usize;
    // Remainder matrix: rows = (bond x physical of current site),
    // columns = remaining basis states. Site 0's physical index is the
    // lowest qubit, which strides fastest in the amplitude index.
    let mut rest_cols = amplitudes.len() / 2;
    let mut remainder = DMatrix::from_fn(2, rest_cols, |s, col| amplitudes[s + 2 * col]);
    let mut tensors = Vec::with_capacity(n);
    let mut bond = 1usize;
    for _site in 0..n - 1 {
        let svd = remainder.svd(true, true);
        let u = svd.u.as_ref().unwrap();
        let vt = svd.v_t.as_ref().unwrap();
        let mut rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-14 * svd.singular_values[0].max(1e-300))
            .count()
            .max(1);
        rank = rank.min(chi);
        let mut tensor = Tensor3::zeros(bond, rank);
        for l in 0..bond {
            for s in 0..2 {
                for r in 0..rank {
                    *tensor.at_mut(l, s, r) = u[(l * 2 + s, r)];
                }
            }
        }
        tensors.push(tensor);
        // Carry sigma * V^T into the next site.
        rest_cols /= 2;
        let mut next = DMatrix::zeros(rank * 2, rest_cols);
        for r in 0..rank {
            let sigma = Complex64::new(svd.singular_values[r], 0.0);
            for col in 0..rest_cols {
                for s in 0..2 {
                    next[(r * 2 + s, col)] = sigma * vt[(r, s + 2 * col)];
                }
            }
        }
        remainder = next;
        bond = rank;
    }
    let mut last = Tensor3::zeros(bond, 1);
    for l in 0..bond {
        for s in 0..2 {
            *last.at_mut(l, s, 0) = remainder[(l * 2 + s, 0)];
        }
    }
    tensors.push(last);
    let mut mps = Mps { tensors };
    mps.normalize();
    Ok(mps)
}

/// Real-vector convenience wrapper around [`compress`].
pub fn compress_real(amplitudes: &[f64], chi: usize) -> Result<Mps, MpsError> {
    let complex: Vec<Complex64> = amplitudes
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    compress(&complex, chi)
}

/// Contracts the MPS back to the dense amplitude vector.
pub fn contract(mps: &Mps) -> Result<Vec<Complex64>, MpsError> {
    let n = mps.sites();
    if n > 24 {
        return Err(MpsError::TooLarge(n));
    }
    // Sweep from the last site toward the first so the fast-striding
    // qubit (site 0) is contracted last: partial[b * block + tail].
    let mut partial: Vec<Complex64> = {
        let t = mps.tensors[n - 1].clone();
        let mut v = vec![Complex64::ZERO; t.left * 2];
        for l in 0..t.left {
            for s in 0..2 {
                v[l * 2 + s] = t.at(l, s, 0);
            }
        }
        v
    };
    let mut block = 2usize;
    for site in (0..n - 1).rev() {
        let t = &mps.tensors[site];
        let mut next = vec![Complex64::ZERO; t.left * 2 * block];
        for l in 0..t.left {
            for s in 0..2 {
                // next[l][s + 2*tail] accumulates over the bond.
                for r in 0..t.right {
                    let coeff = t.at(l, s, r);
                    if coeff != Complex64::ZERO {
                        for tail in 0..block {
                            next[l * 2 * block + s + 2 * tail] += coeff * partial[r * block + tail];
                        }
                    }
                }
            }
        }
        partial = next;
        block *= 2;
    }
    Ok(partial)
}

/// Squared overlap of two amplitude vectors after normalizing both.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> Result<f64, MpsError> {
    if a.len() != b.len() {
        return Err(MpsError::Shape(format!(
            "amplitude vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    let na: f64 = a.iter().map(|v| v.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|v| v.norm_sqr()).sum();
    if na == 0.0 || nb == 0.0 {
        return Err(MpsError::Domain("fidelity of a zero vector".into()));
    }
    let dot: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    Ok(dot.norm_sqr() / (na * nb))
}

/// Real-vector convenience wrapper around [`fidelity`].
pub fn fidelity_real(a: &[f64], b: &[f64]) -> Result<f64, MpsError> {
    let ca: Vec<Complex64> = a.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let cb: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fidelity(&ca, &cb)
}

/// One row of an infidelity sweep table.
#[derive(Clone, Debug, PartialEq)]
pub struct InfidelityRow {
    pub time: usize,
    pub chi: usize,
    pub infidelity: f64,
}

/// Compression infidelity `1 - F(phi_t, contract(compress(phi_t, chi)))`
/// for every trajectory state and bond dimension.
pub fn infidelity_sweep(
    trajectory: &[crate::lattice::ScalarField],
    chis: &[usize],
) -> Result<Vec<InfidelityRow>, MpsError> {
    let mut rows = Vec::with_capacity(trajectory.len() * chis.len());
    for (time, phi) in trajectory.iter().enumerate() {
        let amps: Vec<Complex64> = phi.data.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        for &chi in chis {
            let mps = compress(&amps, chi)?;
            let rebuilt = contract(&mps)?;
            let infidelity = 1.0 - fidelity(&amps, &rebuilt)?;
            rows.push(InfidelityRow {
                time,
                chi,
                infidelity,
            });
        }
    }
    Ok(rows)
}

/// Per-chi maximum infidelity over the trajectory.
pub fn peak_infidelity(rows: &[InfidelityRow], chi: usize) -> f64 {
    rows.iter()
        .filter(|r| r.chi == chi)
        .map(|r| r.infidelity)
        .fold(0.0, f64::max)
}

/// Local expectation-style dot product `<a|b>` for MPS against a dense
/// vector is not needed; overlaps between two MPS go through the
/// transfer contraction below.
pub fn mps_overlap(a: &Mps, b: &Mps) -> Result<Complex64, MpsError> {
    if a.sites() != b.sites() {
        return Err(MpsError::Shape(format!(
            "MPS with {} and {} sites",
            a.sites(),
            b.sites()
        )));
    }
    let mut env = DMatrix::from_element(1, 1, Complex64::ONE);
    for (ta, tb) in a.tensors.iter().zip(&b.tensors) {
        let mut next = DMatrix::zeros(ta.right, tb.right);
        for s in 0..2 {
            let ma = ta.slice(s);
            let mb = tb.slice(s);
            next += ma.adjoint() * &env * &mb;
        }
        env = next;
    }
    Ok(env[(0, 0)])
}

#[allow(dead_code)]
fn as_vector(m: &DMatrix<Complex64>) -> DVector<Complex64> {
    DVector::from_column_slice(m.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_state(n: usize, seed: u64) -> Vec<Complex64> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in &mut v {
            *a /= norm;
        }
        v
    }

    #[test]
    fn product_state_is_exact_at_chi_one() {
        let n = 6;
        let amp = Complex64::new((1.0 / (1u64 << n) as f64).sqrt(), 0.0);
        let uniform = vec![amp; 1 << n];
        let mps = compress(&uniform, 1).unwrap();
        assert_eq!(mps.bond_dimension(), 1);
        let rebuilt = contract(&mps).unwrap();
        assert!(1.0 - fidelity(&uniform, &rebuilt).unwrap() < 1e-12);
    }

    #[test]
    fn ghz_needs_bond_two() {
        let n = 8;
        let mut v = vec![Complex64::ZERO; 1 << n];
        v[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[(1 << n) - 1] = v[0];
        let exact = compress(&v, 2).unwrap();
        assert!(1.0 - fidelity(&v, &contract(&exact).unwrap()).unwrap() < 1e-12);
        // chi = 1 keeps exactly one Schmidt weight of 1/2.
        let truncated = compress(&v, 1).unwrap();
        let f = fidelity(&v, &contract(&truncated).unwrap()).unwrap();
        assert!((f - 0.5).abs() < 1e-10, "fidelity {f}");
    }

    #[test]
    fn full_rank_roundtrip_is_lossless() {
        let v = random_state(10, 21);
        let mps = compress(&v, 32).unwrap();
        let rebuilt = contract(&mps).unwrap();
        for (a, b) in v.iter().zip(&rebuilt) {
            assert!((a - b).norm() < 1e-12);
        }
        assert!((mps.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn truncation_matches_dense_schmidt_oracle() {
        // For chi = 2 the achievable fidelity across the worst cut is
        // bounded by the top-2 Schmidt weights; successive truncation
        // can't beat it, and for this mildly entangled state it should
        // come close.
        let n = 6;
        let v = random_state(n, 5);
        let mps = compress(&v, 2).unwrap();
        let f = fidelity(&v, &contract(&mps).unwrap()).unwrap();
        // Dense oracle at the middle cut.
        let rows = 1 << (n / 2);
        let m = DMatrix::from_fn(rows, rows, |r, c| v[r + rows * c]);
        let svd = m.svd(false, false);
        let mut weights: Vec<f64> = svd.singular_values.iter().map(|s| s * s).collect();
        weights.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let bound: f64 = weights.iter().take(2).sum();
        assert!(f <= bound + 1e-12);
        assert!(f > bound * 0.5);
    }

    #[test]
    fn infidelity_nonincreasing_in_chi() {
        let v = random_state(8, 13);
        let mut last = f64::INFINITY;
        for chi in [1, 2, 4, 8, 16] {
            let mps = compress(&v, chi).unwrap();
            let inf = 1.0 - fidelity(&v, &contract(&mps).unwrap()).unwrap();
            assert!(inf <= last + 1e-12, "chi {chi}: {inf} > {last}");
            last = inf;
        }
    }

    #[test]
    fn fidelity_examples() {
        let a = vec![Complex64::ONE, Complex64::ZERO];
        let b = vec![Complex64::ZERO, Complex64::ONE];
        let plus = vec![
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            2
        ];
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&a, &b).unwrap() < 1e-30);
        assert!((fidelity(&plus, &a).unwrap() - 0.5).abs() < 1e-15);
        assert!(fidelity(&a, &[Complex64::ZERO, Complex64::ZERO]).is_err());
    }

    #[test]
    fn overlap_matches_dense() {
        let va = random_state(6, 1);
        let vb = random_state(6, 2);
        let ma = compress(&va, 64).unwrap();
        let mb = compress(&vb, 64).unwrap();
        let dense: Complex64 = va.iter().zip(&vb).map(|(a, b)| a.conj() * b).sum();
        assert!((mps_overlap(&ma, &mb).unwrap() - dense).norm() < 1e-10);
    }

    #[test]
    fn bad_sizes_rejected() {
        assert!(compress(&[Complex64::ONE; 3], 2).is_err());
        let big = Mps {
            tensors: (0..25).map(|_| Tensor3::zeros(1, 1)).collect(),
        };
        assert!(matches!(contract(&big), Err(MpsError::TooLarge(25))));
    }
}
