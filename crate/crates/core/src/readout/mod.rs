//! Density reconstruction from finite measurement data: direct
//! histogram inversion, kernel-density smoothing, MPS smoothing, and
//! shadow tomography (fitting an MPS to histograms collected under
//! random single-qubit rotations by Hellinger-loss gradient descent).

mod histogram;
mod kde;
mod reconstruct;
mod settings;
mod shadow;

pub use histogram::{histogram_to_amplitudes, Histogram};
pub use kde::{kde_smooth, kde_smooth_probabilities};
pub use reconstruct::{mps_smooth, reconstruct, Method, ReconstructInput};
pub use settings::{generate_settings, MeasurementSetting};
pub use shadow::{hellinger_loss, shadow_fit, FitConfig, FitReport, SettingData, ShadowDataset};

use crate::mps::MpsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReadoutError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Mps(#[from] MpsError),

    #[error("fit diverged: loss rose for {epochs} consecutive epochs (best loss {best_loss:.6e})")]
    FitDiverged {
        epochs: usize,
        best_loss: f64,
        /// Best state reached before divergence.
        best: crate::mps::Mps,
    },
}
