use super::TransformError;
use crate::lattice::ScalarField;
use std::collections::BTreeMap;

/// Sparse Walsh-Hadamard spectrum of a smooth 3D field.
///
/// Blocks of side `R = L / K` are modeled as linear in each coordinate;
/// a linear block's within-block transform is a delta at the block base
/// plus one detail entry per axis and scale, so only `K^3 (1 + 3 r)`
/// entries (with `r = log2 R`) survive. The remaining transform levels
/// act on those entries alone.
#[derive(Clone, Debug)]
pub struct SparseSpectrum {
    /// Grid side length.
    pub side: usize,
    /// Sample blocks per dimension.
    pub k: usize,
    /// log2 of the block side.
    pub r: u32,
    /// Nonzero spectrum entries, keyed by flattened transform index.
    pub entries: BTreeMap<usize, f64>,
    /// Butterfly operations spent in the restricted transform levels.
    pub butterfly_ops: u64,
}

impl SparseSpectrum {
    /// Upper bound `K^3 (1 + 3 r)` on the entry count.
    pub fn entry_bound(&self) -> usize {
        self.k * self.k * self.k * (1 + 3 * self.r as usize)
    }

    pub fn get(&self, index: usize) -> f64 {
        self.entries.get(&index).copied().unwrap_or(0.0)
    }

    /// Dense spectrum (zeros elsewhere).
    pub fn to_dense(&self, len: usize) -> Vec<f64> {
        let mut v = vec![0.0; len];
        for (&i, &val) in &self.entries {
            v[i] = val;
        }
        v
    }
}

/// Interpolated 3D FWHT of a flattened `L^3` field.
///
/// Per block: the base entry is seeded with the block-center value (the
/// mean of the 8 central samples, exact for trilinear fields), the
/// detail entries with slope estimates from neighbor-block differences
/// (forward difference; the last block per axis uses the backward
/// difference instead of wrapping). The remaining `log2 K` levels per
/// axis then run restricted to the seeded entries.
pub fn interpolated_fwht_3d(
    field: &ScalarField,
    samples_per_dim: usize,
) -> Result<SparseSpectrum, TransformError> {
    let grid = field.grid;
    if grid.dims != 3 {
        return Err(TransformError::Shape(format!(
            "interpolated transform needs a 3D field, got {}D",
            grid.dims
        )));
    }
    let side = grid.side();
    let k = samples_per_dim;
    if !k.is_power_of_two() || k == 0 || k > side || side % k != 0 {
        return Err(TransformError::Shape(format!(
            "samples per dimension {k} must be a power of two dividing the side {side}"
        )));
    }
    let block = side / k;
    let r = block.trailing_zeros();
    let slots = 1 + 3 * r as usize;
    let blocks = k * k * k;

    // values[slot * blocks + block_id]; slot 0 is the base, slot
    // 1 + axis*r + m the detail at offset 2^m along that axis.
    let mut values = vec![0.0f64; slots * blocks];

    // Block-center values: the mean over the central samples (two per
    // axis for blocks of side >= 2), equal to the block mean for fields
    // linear in each coordinate.
    let center_offsets: Vec<usize> = if block >= 2 {
        vec![block / 2 - 1, block / 2]
    } else {
        vec![0]
    };
    let mut centers = vec![0.0f64; blocks];
    for bz in 0..k {
        for by in 0..k {
            for bx in 0..k {
                let bid = bx + k * (by + k * bz);
                let mut acc = 0.0;
                for &dz in &center_offsets {
                    for &dy in &center_offsets {
                        for &dx in &center_offsets {
                            acc += field.data[grid.index([
                                bx * block + dx,
                                by * block + dy,
                                bz * block + dz,
                            ])];
                        }
                    }
                }
                centers[bid] = acc / center_offsets.len().pow(3) as f64;
            }
        }
    }
    values[..blocks].copy_from_slice(&centers);

    // Per-axis slopes from neighbor-block center differences.
    if r > 0 {
        let coord = |bid: usize, axis: usize| -> usize {
            (bid / k.pow(axis as u32)) % k
        };
        for bid in 0..blocks {
            for axis in 0..3 {
                let c = coord(bid, axis);
                let stride = k.pow(axis as u32);
                let slope = if k == 1 {
                    0.0
                } else if c + 1 < k {
                    (centers[bid + stride] - centers[bid]) / block as f64
                } else {
                    (centers[bid] - centers[bid - stride]) / block as f64
                };
                for m in 0..r as usize {
                    let slot = 1 + axis * r as usize + m;
                    values[slot * blocks + bid] = -slope * 2.0f64.powi(m as i32 - 1);
                }
            }
        }
    }

    // Remaining transform levels, restricted to the active entries:
    // along each axis, a standard halving butterfly over the block
    // coordinate, applied to every slot.
    let mut ops = 0u64;
    for axis in 0..3 {
        let stride = k.pow(axis as u32);
        let mut h = 1usize;
        while h < k {
            for slot in 0..slots {
                let base = slot * blocks;
                for bid in 0..blocks {
                    let c = (bid / stride) % k;
                    if c & h != 0 {
                        continue;
                    }
                    let partner = bid + h * stride;
                    let x = values[base + bid];
                    let y = values[base + partner];
                    values[base + bid] = (x + y) / 2.0;
                    values[base + partner] = (x - y) / 2.0;
                    ops += 1;
                }
            }
            h *= 2;
        }
    }

    // Assemble the sparse map over flattened transform indices.
    let mut entries = BTreeMap::new();
    for bz in 0..k {
        for by in 0..k {
            for bx in 0..k {
                let bid = bx + k * (by + k * bz);
                let flat_base =
                    bx * block + side * (by * block) + side * side * (bz * block);
                entries.insert(flat_base, values[bid]);
                for axis in 0..3 {
                    let axis_stride = side.pow(axis as u32);
                    for m in 0..r as usize {
                        let slot = 1 + axis * r as usize + m;
                        entries.insert(
                            flat_base + (1 << m) * axis_stride,
                            values[slot * blocks + bid],
                        );
                    }
                }
            }
        }
    }
    Ok(SparseSpectrum {
        side,
        k,
        r,
        entries,
        butterfly_ops: ops,
    })
}
