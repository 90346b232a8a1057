use super::{
    histogram_to_amplitudes, kde_smooth, kde_smooth_probabilities, shadow_fit, FitConfig,
    Histogram, ReadoutError, ShadowDataset,
};
use crate::lattice::{GridSpec, ScalarField};
use crate::mps::{compress_real, contract};

/// Reconstruction pipeline selector.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    Raw,
    Kde,
    Mps,
    KdeMps,
    Shadow,
    ShadowKde,
}

impl std::str::FromStr for Method {
    type Err = ReadoutError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "raw" => Ok(Method::Raw),
            "kde" => Ok(Method::Kde),
            "mps" => Ok(Method::Mps),
            "kde+mps" => Ok(Method::KdeMps),
            "shadow" => Ok(Method::Shadow),
            "shadow+kde" => Ok(Method::ShadowKde),
            other => Err(ReadoutError::Config(format!(
                "unknown reconstruction method `{other}`"
            ))),
        }
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Raw => "raw",
            Method::Kde => "kde",
            Method::Mps => "mps",
            Method::KdeMps => "kde+mps",
            Method::Shadow => "shadow",
            Method::ShadowKde => "shadow+kde",
        }
    }

    pub fn needs_shadow_data(self) -> bool {
        matches!(self, Method::Shadow | Method::ShadowKde)
    }
}

/// Inputs for [`reconstruct`]; methods use the pieces they need.
pub struct ReconstructInput<'a> {
    pub grid: GridSpec,
    pub histogram: Option<&'a Histogram>,
    pub dataset: Option<&'a ShadowDataset>,
    pub chi: usize,
    pub bandwidth: f64,
    pub fit: FitConfig,
}

/// Compress-and-expand smoothing: fit a bond-dimension-chi MPS to the
/// amplitude estimate, take the entrywise modulus (the density is
/// non-negative), and renormalize.
pub fn mps_smooth(phi_hat: &ScalarField, chi: usize) -> Result<ScalarField, ReadoutError> {
    let mps = compress_real(&phi_hat.data, chi)?;
    let rebuilt = contract(&mps)?;
    let mut data: Vec<f64> = rebuilt.iter().map(|a| a.norm()).collect();
    let norm = data.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(ReadoutError::Domain("smoothed field is zero".into()));
    }
    for v in &mut data {
        *v /= norm;
    }
    Ok(ScalarField {
        grid: phi_hat.grid,
        data,
    })
}

fn require_histogram<'a>(input: &ReconstructInput<'a>) -> Result<&'a Histogram, ReadoutError> {
    input
        .histogram
        .ok_or_else(|| ReadoutError::Config("method requires a histogram".into()))
}

fn require_dataset<'a>(input: &ReconstructInput<'a>) -> Result<&'a ShadowDataset, ReadoutError> {
    input
        .dataset
        .ok_or_else(|| ReadoutError::Config("method requires a shadow dataset".into()))
}

fn shadow_amplitudes(input: &ReconstructInput) -> Result<ScalarField, ReadoutError> {
    let dataset = require_dataset(input)?;
    let (mps, _) = shadow_fit(dataset, &input.fit)?;
    let amps = contract(&mps)?;
    let mut data: Vec<f64> = amps.iter().map(|a| a.norm()).collect();
    let norm = data.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut data {
        *v /= norm;
    }
    Ok(ScalarField {
        grid: input.grid,
        data,
    })
}

/// Post-hoc KDE pass over an already-reconstructed amplitude field:
/// smooth the squared amplitudes, take square roots, renormalize.
fn kde_pass(phi: &ScalarField, bandwidth: f64) -> Result<ScalarField, ReadoutError> {
    let probs = ScalarField {
        grid: phi.grid,
        data: phi.data.iter().map(|v| v * v).collect(),
    };
    let smoothed = kde_smooth_probabilities(&probs, bandwidth)?;
    let mut data: Vec<f64> = smoothed.data.iter().map(|p| p.max(0.0).sqrt()).collect();
    let norm = data.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut data {
        *v /= norm;
    }
    Ok(ScalarField {
        grid: phi.grid,
        data,
    })
}

/// Dispatches to the reconstruction pipeline for the method. Combined
/// methods apply KDE before MPS smoothing; the shadow variants fit the
/// dataset first and optionally smooth the result.
pub fn reconstruct(
    method: Method,
    input: &ReconstructInput,
) -> Result<ScalarField, ReadoutError> {
    match method {
        Method::Raw => histogram_to_amplitudes(require_histogram(input)?, input.grid),
        Method::Kde => kde_smooth(require_histogram(input)?, input.bandwidth, input.grid),
        Method::Mps => {
            let raw = histogram_to_amplitudes(require_histogram(input)?, input.grid)?;
            mps_smooth(&raw, input.chi)
        }
        Method::KdeMps => {
            let smoothed = kde_smooth(require_histogram(input)?, input.bandwidth, input.grid)?;
            mps_smooth(&smoothed, input.chi)
        }
        Method::Shadow => shadow_amplitudes(input),
        Method::ShadowKde => {
            let shadow = shadow_amplitudes(input)?;
            kde_pass(&shadow, input.bandwidth)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_parsing_roundtrips() {
        for name in ["raw", "kde", "mps", "kde+mps", "shadow", "shadow+kde"] {
            let m: Method = name.parse().unwrap();
            assert_eq!(m.name(), name);
        }
        assert!("fft".parse::<Method>().is_err());
    }

    #[test]
    fn missing_inputs_are_config_errors() {
        let grid = GridSpec::new(2, 4).unwrap();
        let input = ReconstructInput {
            grid,
            histogram: None,
            dataset: None,
            chi: 2,
            bandwidth: 0.5,
            fit: FitConfig::new(2, 0),
        };
        assert!(matches!(
            reconstruct(Method::Raw, &input),
            Err(ReadoutError::Config(_))
        ));
        assert!(matches!(
            reconstruct(Method::Shadow, &input),
            Err(ReadoutError::Config(_))
        ));
    }

    #[test]
    fn mps_smooth_is_identity_on_low_rank_fields() {
        use crate::lattice::presets;
        let grid = GridSpec::new(3, 8).unwrap();
        // A product (uniform) field is chi = 1 exact.
        let uniform = ScalarField {
            grid,
            data: vec![1.0 / (grid.sites() as f64).sqrt(); grid.sites()],
        };
        let out = mps_smooth(&uniform, 1).unwrap();
        for (a, b) in out.data.iter().zip(&uniform.data) {
            assert!((a - b).abs() < 1e-10);
        }
        // Truncating a two-blob field to chi = 1 loses fidelity vs chi = 4.
        let mut blobs = presets::gaussian_blob_at(grid, [2, 2, 2], 1.0);
        let other = presets::gaussian_blob_at(grid, [6, 6, 6], 1.0);
        for (a, b) in blobs.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        let blobs = blobs.normalized().unwrap();
        let f1 = crate::mps::fidelity_real(
            &mps_smooth(&blobs, 1).unwrap().data,
            &blobs.data,
        )
        .unwrap();
        let f4 = crate::mps::fidelity_real(
            &mps_smooth(&blobs, 4).unwrap().data,
            &blobs.data,
        )
        .unwrap();
        assert!(f1 < f4, "chi=1 fidelity {f1} should trail chi=4 {f4}");
    }
}
