use super::{StateError, StateVector};
use crate::readout::{Histogram, MeasurementSetting};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Classification of a measured bitstring: a shot is accepted exactly
/// when every direction-register bit reads zero.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ShotClass {
    Accepted,
    RejectedGarbage,
}

impl ShotClass {
    pub fn classify(layout: super::RegisterLayout, bitstring: usize) -> Self {
        if layout.dir_value(bitstring) == 0 {
            ShotClass::Accepted
        } else {
            ShotClass::RejectedGarbage
        }
    }
}

/// Samples computational-basis shots from the state.
///
/// When a setting is given its per-qubit rotations are applied to the
/// grid qubits of a copy first. With `noise_p > 0` every direction bit
/// of each sampled bitstring flips independently before classification.
/// Shots whose direction register is not all-zeros are rejected and
/// excluded from the histogram. Sampling is deterministic given the seed.
pub fn measure_histogram(
    state: &StateVector,
    setting: Option<&MeasurementSetting>,
    shots: u64,
    noise_p: f64,
    seed: u64,
) -> Result<(Histogram, u64, u64), StateError> {
    if shots == 0 {
        return Err(StateError::Domain("shot count must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&noise_p) {
        return Err(StateError::Domain(format!(
            "noise probability {noise_p} outside [0, 1]"
        )));
    }
    let layout = state.layout;
    let rotated;
    let probe = if let Some(setting) = setting {
        if setting.rotations.len() != layout.grid_qubits {
            return Err(StateError::LayoutMismatch(format!(
                "setting has {} rotations for {} grid qubits",
                setting.rotations.len(),
                layout.grid_qubits
            )));
        }
        let mut copy = state.clone();
        for (q, rot) in setting.rotations.iter().enumerate() {
            copy.apply_single_qubit(q, rot);
        }
        rotated = copy;
        &rotated
    } else {
        state
    };

    // Cumulative distribution for binary-search sampling.
    let mut cdf = Vec::with_capacity(probe.amps.len());
    let mut acc = 0.0f64;
    for a in &probe.amps {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    let total = acc;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = Histogram::new();
    let mut accepted = 0;
    let mut rejected = 0;
    for _ in 0..shots {
        let target = rng.gen::<f64>() * total;
        let mut idx = cdf.partition_point(|&c| c <= target);
        if idx >= cdf.len() {
            idx = cdf.len() - 1;
        }
        if noise_p > 0.0 {
            for k in 0..layout.dir_qubits {
                if rng.gen::<f64>() < noise_p {
                    idx ^= 1 << layout.dir_qubit(k);
                }
            }
        }
        match ShotClass::classify(layout, idx) {
            ShotClass::Accepted => {
                accepted += 1;
                histogram.record(layout.grid_value(idx) as u64);
            }
            ShotClass::RejectedGarbage => rejected += 1,
        }
    }
    Ok((histogram, accepted, rejected))
}

/// Samples a grid-register-only state (every shot is accepted).
pub fn sample_grid_state(
    state: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<Histogram, StateError> {
    debug_assert_eq!(state.layout.dir_qubits, 0);
    let (histogram, _, _) = measure_histogram(state, None, shots, 0.0, seed)?;
    Ok(histogram)
}
