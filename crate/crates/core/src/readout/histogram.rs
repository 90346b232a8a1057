use super::ReadoutError;
use crate::lattice::{GridSpec, ScalarField};
use std::collections::BTreeMap;

/// Counts of accepted shots per grid basis state.
#[derive(Clone, Debug, Default)]
pub struct Histogram {
    pub counts: BTreeMap<u64, u64>,
}

impl Histogram {
    pub fn new() -> Self {
        Histogram::default()
    }

    pub fn record(&mut self, key: u64) {
        *self.counts.entry(key).or_insert(0) += 1;
    }

    pub fn record_n(&mut self, key: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(key).or_insert(0) += count;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Empirical probability per recorded bin, in key order.
    pub fn probabilities(&self) -> Vec<(u64, f64)> {
        let total = self.total() as f64;
        self.counts
            .iter()
            .map(|(&k, &c)| (k, c as f64 / total))
            .collect()
    }

    /// Dense probability field over the grid.
    pub fn to_probability_field(&self, grid: GridSpec) -> Result<ScalarField, ReadoutError> {
        let total = self.total();
        if total == 0 {
            return Err(ReadoutError::Domain("empty histogram".into()));
        }
        let mut data = vec![0.0; grid.sites()];
        for (&k, &c) in &self.counts {
            let site = k as usize;
            if site >= data.len() {
                return Err(ReadoutError::Shape(format!(
                    "histogram key {site} outside grid of {} sites",
                    data.len()
                )));
            }
            data[site] = c as f64 / total as f64;
        }
        Ok(ScalarField { grid, data })
    }
}

impl FromIterator<(u64, u64)> for Histogram {
    fn from_iter<T: IntoIterator<Item = (u64, u64)>>(iter: T) -> Self {
        Histogram {
            counts: iter.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }
}

/// Direct inversion: amplitude estimate `sqrt(count / total)` per site,
/// renormalized. Valid because the density state is real and
/// non-negative in the computational basis.
pub fn histogram_to_amplitudes(
    h: &Histogram,
    grid: GridSpec,
) -> Result<ScalarField, ReadoutError> {
    let probs = h.to_probability_field(grid)?;
    let mut data: Vec<f64> = probs.data.iter().map(|p| p.sqrt()).collect();
    let norm = data.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut data {
        *v /= norm;
    }
    Ok(ScalarField { grid, data })
}
