use super::TransformError;

/// In-place fast Walsh-Hadamard transform with per-level halving: each
/// butterfly maps `(x, y)` to `((x+y)/2, (x-y)/2)`, so the whole
/// transform is `(H/2)^{tensor n}`. A constant vector transforms to a
/// delta at index zero.
pub fn fwht(a: &mut [f64]) -> Result<(), TransformError> {
    if !a.len().is_power_of_two() {
        return Err(TransformError::NotPowerOfTwo(a.len()));
    }
    let n = a.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for j in block..block + h {
                let x = a[j];
                let y = a[j + h];
                a[j] = (x + y) / 2.0;
                a[j + h] = (x - y) / 2.0;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// Inverse transform: the same butterfly without halving
/// (`(x, y) -> (x+y, x-y)`), i.e. `H^{tensor n}`.
pub fn fwht_inverse(a: &mut [f64]) -> Result<(), TransformError> {
    if !a.len().is_power_of_two() {
        return Err(TransformError::NotPowerOfTwo(a.len()));
    }
    let n = a.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for j in block..block + h {
                let x = a[j];
                let y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent O(N^2) oracle: `(1/2^n) sum_j (-1)^{popcount(j & k)} a_j`.
    pub(crate) fn dense_wht(a: &[f64]) -> Vec<f64> {
        let n = a.len();
        (0..n)
            .map(|k| {
                a.iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        if (j & k).count_ones() % 2 == 0 {
                            v
                        } else {
                            -v
                        }
                    })
                    .sum::<f64>()
                    / n as f64
            })
            .collect()
    }

    #[test]
    fn constant_vector_is_a_delta() {
        let mut a = vec![1.0; 4];
        fwht(&mut a).unwrap();
        assert_eq!(a, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn linear_pair_transforms_to_mean_and_slope() {
        // [theta - s, theta + s] -> [theta, -s]
        let (theta, s) = (0.7, 0.2);
        let mut a = vec![theta - s, theta + s];
        fwht(&mut a).unwrap();
        assert!((a[0] - theta).abs() < 1e-15);
        assert!((a[1] + s).abs() < 1e-15);
    }

    #[test]
    fn matches_dense_oracle_on_random_length_eight() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let v: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut fast = v.clone();
        fwht(&mut fast).unwrap();
        let dense = dense_wht(&v);
        for (a, b) in fast.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn non_power_of_two_rejected() {
        assert!(fwht(&mut [1.0, 2.0, 3.0]).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_recovers_input(
            exp in 1usize..=15,
            seed in 0u64..1000,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<f64> = (0..1usize << exp).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut a = v.clone();
            fwht(&mut a).unwrap();
            fwht_inverse(&mut a).unwrap();
            for (x, y) in a.iter().zip(&v) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
