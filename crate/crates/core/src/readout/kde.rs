use super::{Histogram, ReadoutError};
use crate::lattice::{GridSpec, ScalarField};

/// Smooths a probability field with a periodic Gaussian kernel over
/// lattice coordinates (minimum-image metric). The Gaussian factorizes
/// over axes, so this is a separable 1D convolution per dimension.
pub fn kde_smooth_probabilities(
    probabilities: &ScalarField,
    bandwidth: f64,
) -> Result<ScalarField, ReadoutError> {
    if bandwidth <= 0.0 {
        return Err(ReadoutError::Domain(format!(
            "bandwidth must be positive, got {bandwidth}"
        )));
    }
    let grid = probabilities.grid;
    let side = grid.side();
    let kernel: Vec<f64> = (0..side)
        .map(|delta| {
            let d = (delta as f64).min((side - delta) as f64);
            (-d * d / (2.0 * bandwidth * bandwidth)).exp()
        })
        .collect();
    let kernel_sum: f64 = kernel.iter().sum();

    let mut data = probabilities.data.clone();
    let mut scratch = vec![0.0; data.len()];
    for axis in 0..grid.dims {
        for (idx, out) in scratch.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (delta, w) in kernel.iter().enumerate() {
                acc += w * data[grid.shift(idx, axis, delta as i64)];
            }
            *out = acc / kernel_sum;
        }
        std::mem::swap(&mut data, &mut scratch);
    }
    Ok(ScalarField { grid, data })
}

/// Kernel-density readout: smooth the empirical probabilities, then
/// recover amplitudes as square roots and renormalize.
pub fn kde_smooth(
    histogram: &Histogram,
    bandwidth: f64,
    grid: GridSpec,
) -> Result<ScalarField, ReadoutError> {
    let probs = histogram.to_probability_field(grid)?;
    let smoothed = kde_smooth_probabilities(&probs, bandwidth)?;
    let mut data: Vec<f64> = smoothed.data.iter().map(|p| p.max(0.0).sqrt()).collect();
    let norm = data.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut data {
        *v /= norm;
    }
    Ok(ScalarField { grid, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_bandwidth_approaches_raw_histogram() {
        let g = GridSpec::new(2, 8).unwrap();
        let h: Histogram = [(10u64, 1u64)].into_iter().collect();
        let phi = kde_smooth(&h, 0.01, g).unwrap();
        assert!((phi.data[10] - 1.0).abs() < 1e-6);
        let leak: f64 = phi
            .data
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 10)
            .map(|(_, v)| v * v)
            .sum();
        assert!(leak < 1e-6);
    }

    #[test]
    fn symmetric_histogram_stays_symmetric() {
        let g = GridSpec::new(2, 8).unwrap();
        let a = g.index([2, 4, 0]) as u64;
        let b = g.index([6, 4, 0]) as u64;
        let h: Histogram = [(a, 50u64), (b, 50u64)].into_iter().collect();
        let phi = kde_smooth(&h, 0.8, g).unwrap();
        // Reflection x -> 8 - x maps the two spikes onto each other.
        for idx in 0..g.sites() {
            let [x, y, _] = g.coords(idx);
            let mirrored = g.index([(8 - x) % 8, y, 0]);
            assert!((phi.data[idx] - phi.data[mirrored]).abs() < 1e-12);
        }
    }

    #[test]
    fn smoothing_improves_fidelity_on_gaussian_samples() {
        use crate::lattice::presets;
        use crate::mps::fidelity_real;
        use rand::{Rng, SeedableRng};
        let g = GridSpec::new(3, 8).unwrap();
        let truth = presets::gaussian_blob(g, 2.5);
        let amps = truth.normalized().unwrap();
        // Sample from the squared-amplitude distribution.
        let probs: Vec<f64> = amps.data.iter().map(|v| v * v).collect();
        let mut cdf = probs.clone();
        for i in 1..cdf.len() {
            cdf[i] += cdf[i - 1];
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let mut h = Histogram::new();
        for _ in 0..5_000 {
            let t = rng.gen::<f64>() * cdf[cdf.len() - 1];
            let idx = cdf.partition_point(|&c| c <= t).min(cdf.len() - 1);
            h.record(idx as u64);
        }
        let raw = super::super::histogram_to_amplitudes(&h, g).unwrap();
        let smooth = kde_smooth(&h, 0.5, g).unwrap();
        let f_raw = fidelity_real(&raw.data, &amps.data).unwrap();
        let f_smooth = fidelity_real(&smooth.data, &amps.data).unwrap();
        assert!(
            f_smooth > f_raw,
            "KDE fidelity {f_smooth} should beat raw {f_raw}"
        );
    }

    #[test]
    fn non_positive_bandwidth_rejected() {
        let g = GridSpec::new(2, 4).unwrap();
        let h: Histogram = [(0u64, 1u64)].into_iter().collect();
        assert!(kde_smooth(&h, 0.0, g).is_err());
    }
}
