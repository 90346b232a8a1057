use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rand::SeedableRng;

/// One measurement setting: an independent Haar-random SU(2) rotation
/// per grid qubit, appended before the computational-basis measurement.
#[derive(Clone, Debug)]
pub struct MeasurementSetting {
    /// One 2x2 unitary per grid qubit, `rotations[q][row][col]`.
    pub rotations: Vec<[[Complex64; 2]; 2]>,
    /// Seed the batch was generated from.
    pub seed: u64,
    /// Index within the batch.
    pub index: usize,
}

/// Haar-random SU(2) element from four standard normals (a normalized
/// quaternion maps uniformly onto SU(2)).
fn haar_su2(rng: &mut ChaCha8Rng) -> [[Complex64; 2]; 2] {
    let mut q = [0.0f64; 4];
    loop {
        for v in &mut q {
            *v = rng.sample(StandardNormal);
        }
        let n = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 1e-12 {
            for v in &mut q {
                *v /= n;
            }
            break;
        }
    }
    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
    [
        [Complex64::new(a, b), Complex64::new(c, d)],
        [Complex64::new(-c, d), Complex64::new(a, -b)],
    ]
}

/// Generates `m` settings for `n_grid_qubits` qubits, deterministically
/// from the seed.
pub fn generate_settings(m: usize, n_grid_qubits: usize, seed: u64) -> Vec<MeasurementSetting> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|index| MeasurementSetting {
            rotations: (0..n_grid_qubits).map(|_| haar_su2(&mut rng)).collect(),
            seed,
            index,
        })
        .collect()
}
