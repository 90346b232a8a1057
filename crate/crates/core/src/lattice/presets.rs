//! Named velocity-field and initial-condition presets.
//!
//! Every velocity preset is exactly divergence-free under the
//! central-difference discrete divergence: analytic presets depend on
//! one coordinate per component only, and constructed presets are
//! discrete curls of a vector potential (central-difference operators
//! commute, so the divergence telescopes to zero).

use super::{GridSpec, ScalarField, VelocityField};
use crate::walls::WallMask;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Planar swirl `u = A(-sin(2 pi y / L), sin(2 pi x / L), 0)`.
pub fn swirl(grid: GridSpec, amplitude: f64) -> VelocityField {
    let side = grid.side() as f64;
    let mut data = vec![[0.0; 3]; grid.sites()];
    for idx in 0..grid.sites() {
        let [x, y, _] = grid.coords(idx);
        data[idx][0] = -amplitude * (TAU * y as f64 / side).sin();
        data[idx][1] = amplitude * (TAU * x as f64 / side).sin();
    }
    VelocityField { grid, data }
}

/// Shear flow `u = (A sin(2 pi y / L), 0, 0)`.
pub fn shear(grid: GridSpec, amplitude: f64) -> VelocityField {
    let side = grid.side() as f64;
    let mut data = vec![[0.0; 3]; grid.sites()];
    for idx in 0..grid.sites() {
        let y = grid.coords(idx)[1];
        data[idx][0] = amplitude * (TAU * y as f64 / side).sin();
    }
    VelocityField { grid, data }
}

/// Uniform velocity.
pub fn constant(grid: GridSpec, u: [f64; 3]) -> VelocityField {
    let mut v = u;
    if grid.dims == 2 {
        v[2] = 0.0;
    }
    VelocityField {
        grid,
        data: vec![v; grid.sites()],
    }
}

/// Normalized isotropic Gaussian blob centered at L/2 (the default
/// initial condition; smooth, so it compresses well).
pub fn gaussian_blob(grid: GridSpec, sigma: f64) -> ScalarField {
    gaussian_blob_at(grid, [grid.side() / 2; 3], sigma)
}

/// Normalized isotropic Gaussian blob at an arbitrary center, using
/// periodic minimum-image distances.
pub fn gaussian_blob_at(grid: GridSpec, center: [usize; 3], sigma: f64) -> ScalarField {
    let side = grid.side() as f64;
    let mut data = vec![0.0; grid.sites()];
    for idx in 0..grid.sites() {
        let c = grid.coords(idx);
        let mut d2 = 0.0;
        for a in 0..grid.dims {
            let delta = (c[a] as f64 - center[a] as f64).abs();
            let delta = delta.min(side - delta);
            d2 += delta * delta;
        }
        data[idx] = (-d2 / (2.0 * sigma * sigma)).exp();
    }
    let total: f64 = data.iter().sum();
    for v in &mut data {
        *v /= total;
    }
    ScalarField { grid, data }
}

/// Random exactly-divergence-free field built as the discrete curl of a
/// random smooth vector potential, rescaled so `max |u_a| = amplitude`.
pub fn random_divergence_free(grid: GridSpec, amplitude: f64, seed: u64) -> VelocityField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let potential: Vec<[f64; 3]> = (0..grid.sites())
        .map(|_| [0.0; 3].map(|_| rng.gen_range(-1.0..1.0)))
        .collect();
    curl_rescaled(grid, &potential, amplitude)
}

/// Swirl that tapers to zero near wall sites, built as the curl of the
/// masked swirl potential. The velocity vanishes identically within one
/// site of any wall, so all wall-face normal components are exactly zero.
pub fn masked_swirl(grid: GridSpec, amplitude: f64, mask: &WallMask) -> VelocityField {
    let side = grid.side() as f64;
    let taper = wall_taper(grid, mask);
    let potential: Vec<[f64; 3]> = (0..grid.sites())
        .map(|idx| {
            let [x, y, _] = grid.coords(idx);
            let psi = (TAU * x as f64 / side).cos() + (TAU * y as f64 / side).cos();
            [0.0, 0.0, taper[idx] * psi]
        })
        .collect();
    curl_rescaled(grid, &potential, amplitude)
}

/// Shear flow along x whose profile varies with z, tapered to zero near
/// walls (a pipe-like flow past obstacles).
pub fn masked_shear(grid: GridSpec, amplitude: f64, mask: &WallMask) -> VelocityField {
    let side = grid.side() as f64;
    let taper = wall_taper(grid, mask);
    let potential: Vec<[f64; 3]> = (0..grid.sites())
        .map(|idx| {
            let z = grid.coords(idx)[2];
            let psi = -(TAU * z as f64 / side).cos();
            [0.0, taper[idx] * psi, 0.0]
        })
        .collect();
    curl_rescaled(grid, &potential, amplitude)
}

/// Per-site taper weight: 0 within distance 2 of a wall, 1 beyond
/// distance 4, linear in between. Curling a potential multiplied by
/// this leaves the velocity exactly zero within one site of any wall.
fn wall_taper(grid: GridSpec, mask: &WallMask) -> Vec<f64> {
    let dist = mask.distance_field();
    dist.iter()
        .map(|&d| ((d as f64 - 2.0) / 2.0).clamp(0.0, 1.0))
        .collect()
}

fn curl_rescaled(grid: GridSpec, potential: &[[f64; 3]], amplitude: f64) -> VelocityField {
    let d = |idx: usize, comp: usize, axis: usize| -> f64 {
        (potential[grid.shift(idx, axis, 1)][comp] - potential[grid.shift(idx, axis, -1)][comp])
            / 2.0
    };
    let mut data = vec![[0.0; 3]; grid.sites()];
    if grid.dims == 2 {
        // u = (d psi/dy, -d psi/dx) from the z component of the potential.
        for idx in 0..grid.sites() {
            data[idx][0] = d(idx, 2, 1);
            data[idx][1] = -d(idx, 2, 0);
        }
    } else {
        for idx in 0..grid.sites() {
            data[idx][0] = d(idx, 2, 1) - d(idx, 1, 2);
            data[idx][1] = d(idx, 0, 2) - d(idx, 2, 0);
            data[idx][2] = d(idx, 1, 0) - d(idx, 0, 1);
        }
    }
    let max = data
        .iter()
        .flat_map(|v| v.iter().take(grid.dims))
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if max > 0.0 {
        let s = amplitude / max;
        for v in &mut data {
            for c in v.iter_mut() {
                *c *= s;
            }
        }
    }
    VelocityField { grid, data }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::discrete_divergence;

    #[test]
    fn random_field_is_divergence_free_and_bounded() {
        let g = GridSpec::new(3, 8).unwrap();
        let u = random_divergence_free(g, 0.3, 42);
        u.check_magnitude().unwrap();
        let div = discrete_divergence(&u);
        for v in &div.data {
            assert!(v.abs() < 1e-14);
        }
        let max = u
            .data
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((max - 0.3).abs() < 1e-12);
    }

    #[test]
    fn gaussian_blob_is_normalized_and_centered() {
        let g = GridSpec::new(3, 16).unwrap();
        let phi = gaussian_blob(g, 2.0);
        assert!((phi.total_mass() - 1.0).abs() < 1e-12);
        let peak = phi
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(g.coords(peak), [8, 8, 8]);
    }

    #[test]
    fn masked_fields_vanish_next_to_walls() {
        let g = GridSpec::new(3, 16).unwrap();
        let mut wall = vec![false; g.sites()];
        for idx in 0..g.sites() {
            let [x, y, z] = g.coords(idx);
            if z == 0 || (x >= 6 && x <= 9 && y >= 6 && y <= 9 && z >= 6 && z <= 9) {
                wall[idx] = true;
            }
        }
        let mask = WallMask::new(g, wall).unwrap();
        for u in [masked_swirl(g, 0.2, &mask), masked_shear(g, 0.2, &mask)] {
            u.check_magnitude().unwrap();
            u.check_divergence_free(1e-13).unwrap();
            mask.check_velocity(&u).unwrap();
        }
    }
}
