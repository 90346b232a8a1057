//! Shadow tomography: fit a bond-dimension-chi MPS to histograms
//! collected under random single-qubit rotations by minimizing the
//! Hellinger loss
//!
//! ```text
//! L = sum_m sum_b (sqrt(phat_m(b)) - sqrt(p_m(b)))^2
//!   = 2 M - 2 sum_m sum_observed sqrt(phat_m(b) p_m(b))
//! ```
//!
//! with `p_m(b) = |<b| U_1 ... U_n |psi>|^2 / <psi|psi>`. The predicted
//! mass on unobserved bitstrings enters through the closed form, and
//! the gradient is exact, computed from cached left/right environment
//! contractions of the amplitude network plus the norm network.

use super::{Histogram, MeasurementSetting, ReadoutError};
use crate::mps::{Mps, Tensor3};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rand::SeedableRng;
use rayon::prelude::*;

/// Accepted-shot histogram for one measurement setting.
#[derive(Clone, Debug)]
pub struct SettingData {
    pub setting: MeasurementSetting,
    pub histogram: Histogram,
}

impl SettingData {
    pub fn shots(&self) -> u64 {
        self.histogram.total()
    }
}

/// The full shadow dataset: per-setting rotations and histograms.
#[derive(Clone, Debug)]
pub struct ShadowDataset {
    pub n_qubits: usize,
    pub settings: Vec<SettingData>,
}

impl ShadowDataset {
    pub fn new(n_qubits: usize, settings: Vec<SettingData>) -> Result<Self, ReadoutError> {
        if settings.is_empty() {
            return Err(ReadoutError::Domain("shadow dataset has no settings".into()));
        }
        for s in &settings {
            if s.setting.rotations.len() != n_qubits {
                return Err(ReadoutError::Shape(format!(
                    "setting {} has {} rotations for {} qubits",
                    s.setting.index,
                    s.setting.rotations.len(),
                    n_qubits
                )));
            }
        }
        Ok(ShadowDataset { n_qubits, settings })
    }

    /// Settings that actually recorded shots.
    pub fn effective_settings(&self) -> usize {
        self.settings.iter().filter(|s| s.shots() > 0).count()
    }
}

/// Gradient-descent hyperparameters.
#[derive(Clone, Debug)]
pub struct FitConfig {
    pub chi: usize,
    pub learning_rate: f64,
    /// Multiplicative step decay per epoch.
    pub decay: f64,
    pub max_epochs: usize,
    /// Consecutive loss-increase epochs before declaring divergence.
    pub divergence_patience: usize,
    /// Relative improvement below which the plateau counter advances;
    /// `plateau_patience` such epochs stop the fit early.
    pub plateau_tolerance: f64,
    pub plateau_patience: usize,
    /// Scale of the random perturbation around the uniform product state.
    pub init_noise: f64,
    pub seed: u64,
    /// Optional warm start instead of the near-product initialization.
    pub warm_start: Option<Mps>,
}

impl FitConfig {
    pub fn new(chi: usize, seed: u64) -> Self {
        FitConfig {
            chi,
            learning_rate: 0.05,
            decay: 0.98,
            max_epochs: 500,
            divergence_patience: 50,
            plateau_tolerance: 1e-9,
            plateau_patience: 25,
            init_noise: 0.01,
            seed,
            warm_start: None,
        }
    }
}

/// Fit diagnostics.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub epochs_run: usize,
    pub initial_loss: f64,
    pub best_loss: f64,
}

/// Observation list for one setting: bitstring, sqrt of the empirical
/// probability.
struct Observations {
    rows: Vec<(u64, f64)>,
}

fn observations(data: &SettingData) -> Observations {
    let total = data.shots() as f64;
    Observations {
        rows: data
            .histogram
            .counts
            .iter()
            .map(|(&b, &c)| (b, (c as f64 / total).sqrt()))
            .collect(),
    }
}

/// Per-site matrices `M_q = <b_q| U_q T_q` and the local row vectors.
struct AmplitudeNetwork<'a> {
    mps: &'a Mps,
    rotations: &'a [[[Complex64; 2]; 2]],
}

impl AmplitudeNetwork<'_> {
    /// Local 2-vector `<b_q| U_q` for site q.
    #[inline]
    fn local_row(&self, q: usize, bit: usize) -> [Complex64; 2] {
        [self.rotations[q][bit][0], self.rotations[q][bit][1]]
    }

    /// `M_q` applied to a column vector from the right:
    /// `out[l] = sum_r M_q[l, r] v[r]`.
    fn apply_site(&self, q: usize, bit: usize, v: &[Complex64], out: &mut Vec<Complex64>) {
        let t = &self.mps.tensors[q];
        let u = self.local_row(q, bit);
        out.clear();
        out.resize(t.left, Complex64::ZERO);
        for l in 0..t.left {
            let mut acc = Complex64::ZERO;
            for s in 0..2 {
                if u[s] != Complex64::ZERO {
                    let base = (l * 2 + s) * t.right;
                    let mut inner = Complex64::ZERO;
                    for r in 0..t.right {
                        inner += t.data[base + r] * v[r];
                    }
                    acc += u[s] * inner;
                }
            }
            out[l] = acc;
        }
    }
}

/// Exact Hellinger loss of an MPS against the dataset.
pub fn hellinger_loss(dataset: &ShadowDataset, mps: &Mps) -> Result<f64, ReadoutError> {
    if mps.sites() != dataset.n_qubits {
        return Err(ReadoutError::Shape(format!(
            "MPS has {} sites, dataset expects {}",
            mps.sites(),
            dataset.n_qubits
        )));
    }
    let norm_sqr = mps.norm_sqr();
    if norm_sqr <= 0.0 {
        return Err(ReadoutError::Domain("MPS has zero norm".into()));
    }
    let affinities: Vec<f64> = dataset
        .settings
        .par_iter()
        .map(|data| setting_affinity(mps, data, norm_sqr))
        .collect();
    let m = dataset.effective_settings() as f64;
    Ok(2.0 * m - 2.0 * affinities.iter().sum::<f64>())
}

/// `sum_observed sqrt(phat * p)` for one setting.
fn setting_affinity(mps: &Mps, data: &SettingData, norm_sqr: f64) -> f64 {
    if data.shots() == 0 {
        return 0.0;
    }
    let net = AmplitudeNetwork {
        mps,
        rotations: &data.setting.rotations,
    };
    let n = mps.sites();
    let obs = observations(data);
    let mut acc = 0.0;
    let mut v = vec![Complex64::ONE];
    let mut scratch = Vec::new();
    for (b, sqrt_phat) in obs.rows {
        v.clear();
        v.push(Complex64::ONE);
        for q in (0..n).rev() {
            let bit = ((b >> q) & 1) as usize;
            net.apply_site(q, bit, &v, &mut scratch);
            std::mem::swap(&mut v, &mut scratch);
        }
        let amp = v[0];
        acc += sqrt_phat * amp.norm() / norm_sqr.sqrt();
    }
    acc
}

/// Gradient buffers shaped like the MPS.
struct Gradient {
    tensors: Vec<Vec<Complex64>>,
}

impl Gradient {
    fn zeros(mps: &Mps) -> Self {
        Gradient {
            tensors: mps.tensors.iter().map(|t| vec![Complex64::ZERO; t.data.len()]).collect(),
        }
    }

    fn add(&mut self, other: &Gradient) {
        for (a, b) in self.tensors.iter_mut().zip(&other.tensors) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += *y;
            }
        }
    }
}

/// Loss and packed complex gradient (d/dRe + i d/dIm per entry).
fn loss_and_gradient(dataset: &ShadowDataset, mps: &Mps) -> (f64, Gradient) {
    let n = mps.sites();
    let norm_sqr = mps.norm_sqr();
    let sqrt_n = norm_sqr.sqrt();

    // Per-setting partial gradients and affinities, reduced in setting
    // order for determinism.
    let partials: Vec<(f64, Gradient)> = dataset
        .settings
        .par_iter()
        .map(|data| {
            let mut grad = Gradient::zeros(mps);
            if data.shots() == 0 {
                return (0.0, grad);
            }
            let net = AmplitudeNetwork {
                mps,
                rotations: &data.setting.rotations,
            };
            let obs = observations(data);
            let mut affinity = 0.0;
            // Suffix vectors per site: suffix[q] = M_q ... M_{n-1} applied
            // to [1]; prefix grows from the left.
            let mut suffix: Vec<Vec<Complex64>> = vec![Vec::new(); n + 1];
            let mut scratch = Vec::new();
            for (b, sqrt_phat) in obs.rows {
                suffix[n] = vec![Complex64::ONE];
                for q in (0..n).rev() {
                    let bit = ((b >> q) & 1) as usize;
                    net.apply_site(q, bit, &suffix[q + 1].clone(), &mut scratch);
                    suffix[q] = scratch.clone();
                }
                let amp = suffix[0][0];
                let amp_abs = amp.norm();
                if amp_abs < 1e-150 {
                    continue;
                }
                affinity += sqrt_phat * amp_abs / sqrt_n;
                // coeff * A * conj(G) with G = prefix x u x suffix.
                let coeff = -2.0 * sqrt_phat / (amp_abs * sqrt_n);
                let lead = coeff * amp;
                let mut prefix = vec![Complex64::ONE];
                for q in 0..n {
                    let t = &mps.tensors[q];
                    let bit = ((b >> q) & 1) as usize;
                    let u = net.local_row(q, bit);
                    let right = &suffix[q + 1];
                    let gt = &mut grad.tensors[q];
                    for l in 0..t.left {
                        let pl = prefix[l].conj();
                        if pl == Complex64::ZERO {
                            continue;
                        }
                        for s in 0..2 {
                            let us = u[s].conj();
                            if us == Complex64::ZERO {
                                continue;
                            }
                            let base = (l * 2 + s) * t.right;
                            let factor = lead * pl * us;
                            for r in 0..t.right {
                                gt[base + r] += factor * right[r].conj();
                            }
                        }
                    }
                    // prefix <- prefix . M_q
                    let mut next = vec![Complex64::ZERO; t.right];
                    for l in 0..t.left {
                        let p = prefix[l];
                        if p == Complex64::ZERO {
                            continue;
                        }
                        for s in 0..2 {
                            if u[s] == Complex64::ZERO {
                                continue;
                            }
                            let base = (l * 2 + s) * t.right;
                            let pu = p * u[s];
                            for r in 0..t.right {
                                next[r] += pu * t.data[base + r];
                            }
                        }
                    }
                    prefix = next;
                }
            }
            (affinity, grad)
        })
        .collect();

    let mut grad = Gradient::zeros(mps);
    let mut affinity_total = 0.0;
    for (aff, g) in &partials {
        affinity_total += aff;
        grad.add(g);
    }

    // Normalization term: + (2 affinity / n) * conj(Ek).
    let norm_envs = norm_environments(mps);
    let factor = 2.0 * affinity_total / norm_sqr;
    for (q, gt) in grad.tensors.iter_mut().enumerate() {
        let t = &mps.tensors[q];
        let (rho_l, rho_r) = (&norm_envs.left[q], &norm_envs.right[q + 1]);
        let dim_l = t.left;
        let dim_r = t.right;
        for l in 0..dim_l {
            for s in 0..2 {
                for r in 0..dim_r {
                    // Ek[l,s,r] = sum_{lb, rb} conj(T[lb,s,rb]) rhoL[lb,l] rhoR[rb,r]
                    let mut ek = Complex64::ZERO;
                    for lb in 0..dim_l {
                        let rl = rho_l[lb * dim_l + l];
                        if rl == Complex64::ZERO {
                            continue;
                        }
                        let base = (lb * 2 + s) * dim_r;
                        for rb in 0..dim_r {
                            ek += t.data[base + rb].conj() * rl * rho_r[rb * dim_r + r];
                        }
                    }
                    gt[(l * 2 + s) * dim_r + r] += factor * ek.conj();
                }
            }
        }
    }

    let m = dataset.effective_settings() as f64;
    (2.0 * m - 2.0 * affinity_total, grad)
}

/// Left/right environments of the norm network `<psi|psi>`:
/// `left[q]` covers sites `< q` (bra index major), `right[q]` covers
/// sites `>= q`.
struct NormEnvironments {
    left: Vec<Vec<Complex64>>,
    right: Vec<Vec<Complex64>>,
}

fn norm_environments(mps: &Mps) -> NormEnvironments {
    let n = mps.sites();
    let mut left = Vec::with_capacity(n + 1);
    left.push(vec![Complex64::ONE]);
    for q in 0..n {
        let t = &mps.tensors[q];
        let prev = &left[q];
        let mut next = vec![Complex64::ZERO; t.right * t.right];
        for s in 0..2 {
            for lb in 0..t.left {
                for lk in 0..t.left {
                    let e = prev[lb * t.left + lk];
                    if e == Complex64::ZERO {
                        continue;
                    }
                    let base_b = (lb * 2 + s) * t.right;
                    let base_k = (lk * 2 + s) * t.right;
                    for rb in 0..t.right {
                        let tb = t.data[base_b + rb].conj() * e;
                        if tb == Complex64::ZERO {
                            continue;
                        }
                        for rk in 0..t.right {
                            next[rb * t.right + rk] += tb * t.data[base_k + rk];
                        }
                    }
                }
            }
        }
        left.push(next);
    }
    let mut right = vec![Vec::new(); n + 1];
    right[n] = vec![Complex64::ONE];
    for q in (0..n).rev() {
        let t = &mps.tensors[q];
        let succ = &right[q + 1];
        let mut prev = vec![Complex64::ZERO; t.left * t.left];
        for s in 0..2 {
            for rb in 0..t.right {
                for rk in 0..t.right {
                    let e = succ[rb * t.right + rk];
                    if e == Complex64::ZERO {
                        continue;
                    }
                    for lb in 0..t.left {
                        let tb = t.data[(lb * 2 + s) * t.right + rb].conj() * e;
                        if tb == Complex64::ZERO {
                            continue;
                        }
                        for lk in 0..t.left {
                            prev[lb * t.left + lk] += tb * t.data[(lk * 2 + s) * t.right + rk];
                        }
                    }
                }
            }
        }
        right[q] = prev;
    }
    NormEnvironments { left, right }
}

/// Near-product initialization: the uniform superposition product state
/// perturbed by seeded Gaussian noise, with the bond profile capped at chi.
pub fn near_product_init(n: usize, chi: usize, noise: f64, seed: u64) -> Mps {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tensors = Vec::with_capacity(n);
    let mut left = 1usize;
    for q in 0..n {
        let right = if q + 1 == n {
            1
        } else {
            chi.min(1 << (q + 1)).min(1 << (n - q - 1))
        };
        let mut t = Tensor3::zeros(left, right);
        for v in &mut t.data {
            *v = Complex64::new(
                noise * rng.sample::<f64, _>(StandardNormal),
                noise * rng.sample::<f64, _>(StandardNormal),
            );
        }
        let base = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for s in 0..2 {
            *t.at_mut(0, s, 0) += base;
        }
        tensors.push(t);
        left = right;
    }
    let mut mps = Mps { tensors };
    mps.normalize();
    mps
}

/// Fits an MPS to the dataset by full-batch gradient descent on the
/// Hellinger loss. Returns the best state found (normalized) and a
/// report; diverging runs (loss rising for `divergence_patience`
/// consecutive epochs) fail with the best state attached.
pub fn shadow_fit(
    dataset: &ShadowDataset,
    config: &FitConfig,
) -> Result<(Mps, FitReport), ReadoutError> {
    if dataset.settings.iter().all(|s| s.shots() == 0) {
        return Err(ReadoutError::Domain(
            "shadow dataset has no accepted shots".into(),
        ));
    }
    let mut mps = match &config.warm_start {
        Some(m) => {
            if m.sites() != dataset.n_qubits {
                return Err(ReadoutError::Shape(format!(
                    "warm start has {} sites, dataset expects {}",
                    m.sites(),
                    dataset.n_qubits
                )));
            }
            m.clone()
        }
        None => near_product_init(dataset.n_qubits, config.chi, config.init_noise, config.seed),
    };

    let mut lr = config.learning_rate;
    let mut best = mps.clone();
    let mut best_loss = f64::INFINITY;
    let mut initial_loss = f64::NAN;
    let mut rising = 0usize;
    let mut plateau = 0usize;
    let mut epochs_run = 0usize;
    for epoch in 0..config.max_epochs {
        let (loss, grad) = loss_and_gradient(dataset, &mps);
        epochs_run = epoch + 1;
        if epoch == 0 {
            initial_loss = loss;
        }
        if loss < best_loss - config.plateau_tolerance * best_loss.abs().max(1e-30) {
            plateau = 0;
        } else {
            plateau += 1;
        }
        if loss < best_loss {
            best_loss = loss;
            best = mps.clone();
            rising = 0;
        } else {
            rising += 1;
            if rising >= config.divergence_patience {
                return Err(ReadoutError::FitDiverged {
                    epochs: rising,
                    best_loss,
                    best,
                });
            }
        }
        if plateau >= config.plateau_patience {
            break;
        }
        for (t, g) in mps.tensors.iter_mut().zip(&grad.tensors) {
            for (v, dv) in t.data.iter_mut().zip(g) {
                *v -= lr * dv;
            }
        }
        lr *= config.decay;
    }
    best.normalize();
    Ok((
        best,
        FitReport {
            epochs_run,
            initial_loss,
            best_loss,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::readout::generate_settings;

    fn amplitude(mps: &Mps, rotations: &[[[Complex64; 2]; 2]], b: u64) -> Complex64 {
        let net = AmplitudeNetwork { mps, rotations };
        let n = mps.sites();
        let mut v = vec![Complex64::ONE];
        let mut scratch = Vec::new();
        for q in (0..n).rev() {
            let bit = ((b >> q) & 1) as usize;
            net.apply_site(q, bit, &v.clone(), &mut scratch);
            v = scratch.clone();
        }
        v[0]
    }

    /// Dense brute-force probabilities for one setting.
    fn dense_probs(mps: &Mps, rotations: &[[[Complex64; 2]; 2]]) -> Vec<f64> {
        let n = mps.sites();
        let norm = mps.norm_sqr();
        (0..1u64 << n)
            .map(|b| amplitude(mps, rotations, b).norm_sqr() / norm)
            .collect()
    }

    fn dataset_from_probs(
        settings: Vec<MeasurementSetting>,
        probs: impl Fn(&MeasurementSetting) -> Vec<f64>,
        shots: u64,
        seed: u64,
    ) -> ShadowDataset {
        use rand::{Rng, SeedableRng};
        let n_qubits = settings[0].rotations.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = settings
            .into_iter()
            .map(|setting| {
                let p = probs(&setting);
                let mut cdf = p.clone();
                for i in 1..cdf.len() {
                    cdf[i] += cdf[i - 1];
                }
                let mut histogram = Histogram::new();
                for _ in 0..shots {
                    let t = rng.gen::<f64>() * cdf[cdf.len() - 1];
                    let idx = cdf.partition_point(|&c| c <= t).min(cdf.len() - 1);
                    histogram.record(idx as u64);
                }
                SettingData { setting, histogram }
            })
            .collect();
        ShadowDataset::new(n_qubits, data).unwrap()
    }

    #[test]
    fn loss_vanishes_when_model_matches_data_exactly() {
        // Build a dataset whose empirical distribution IS the model
        // distribution (counts proportional to p), then the loss is ~0.
        let n = 3;
        let mps = near_product_init(n, 2, 0.05, 3);
        let settings = generate_settings(2, n, 10);
        let mut data = Vec::new();
        for setting in settings {
            let p = dense_probs(&mps, &setting.rotations);
            let mut histogram = Histogram::new();
            let scale = 1e9;
            for (b, &prob) in p.iter().enumerate() {
                let c = (prob * scale).round() as u64;
                if c > 0 {
                    histogram.record_n(b as u64, c);
                }
            }
            data.push(SettingData { setting, histogram });
        }
        let dataset = ShadowDataset::new(n, data).unwrap();
        let loss = hellinger_loss(&dataset, &mps).unwrap();
        assert!(loss < 1e-6, "loss {loss}");
    }

    #[test]
    fn disjoint_deltas_saturate_the_loss() {
        // phat = delta_b1, p = delta_b2 (orthogonal basis states): loss 2.
        let n = 2;
        let mut tensors = Vec::new();
        // |00>: product state with both sites pinned to 0.
        for q in 0..n {
            let mut t = Tensor3::zeros(1, 1);
            *t.at_mut(0, 0, 0) = Complex64::ONE;
            tensors.push(t);
            let _ = q;
        }
        let mps = Mps { tensors };
        let identity = [[Complex64::ONE, Complex64::ZERO], [Complex64::ZERO, Complex64::ONE]];
        let setting = MeasurementSetting {
            rotations: vec![identity; n],
            seed: 0,
            index: 0,
        };
        let mut histogram = Histogram::new();
        histogram.record_n(0b11, 100);
        let dataset = ShadowDataset::new(n, vec![SettingData { setting, histogram }]).unwrap();
        let loss = hellinger_loss(&dataset, &mps).unwrap();
        assert!((loss - 2.0).abs() < 1e-12);
    }

    #[test]
    fn loss_bounded_by_twice_setting_count() {
        let n = 3;
        let mps = near_product_init(n, 2, 0.3, 8);
        let settings = generate_settings(5, n, 21);
        let dataset = dataset_from_probs(
            settings,
            |_| vec![1.0 / 8.0; 8],
            200,
            9,
        );
        let loss = hellinger_loss(&dataset, &mps).unwrap();
        assert!(loss >= 0.0 && loss <= 10.0 + 1e-12);
    }

    #[test]
    fn analytic_gradient_matches_finite_differences() {
        let n = 4;
        let chi = 2;
        let target = near_product_init(n, chi, 0.2, 77);
        let settings = generate_settings(5, n, 31);
        let dataset = dataset_from_probs(
            settings,
            |s| dense_probs(&target, &s.rotations),
            400,
            13,
        );
        let mps = near_product_init(n, chi, 0.1, 5);
        let (loss0, grad) = loss_and_gradient(&dataset, &mps);
        assert!((loss0 - hellinger_loss(&dataset, &mps).unwrap()).abs() < 1e-12);
        let h = 1e-6;
        let mut worst: f64 = 0.0;
        for q in 0..n {
            for k in 0..mps.tensors[q].data.len() {
                for part in 0..2 {
                    let mut plus = mps.clone();
                    let mut minus = mps.clone();
                    let delta = if part == 0 {
                        Complex64::new(h, 0.0)
                    } else {
                        Complex64::new(0.0, h)
                    };
                    plus.tensors[q].data[k] += delta;
                    minus.tensors[q].data[k] -= delta;
                    let fd = (hellinger_loss(&dataset, &plus).unwrap()
                        - hellinger_loss(&dataset, &minus).unwrap())
                        / (2.0 * h);
                    let analytic = if part == 0 {
                        grad.tensors[q][k].re
                    } else {
                        grad.tensors[q][k].im
                    };
                    let scale = fd.abs().max(analytic.abs()).max(1e-8);
                    worst = worst.max((fd - analytic).abs() / scale);
                }
            }
        }
        assert!(worst < 1e-6, "worst relative gradient error {worst}");
    }

    #[test]
    fn product_state_is_learned_from_noiseless_data() {
        // chi = 1 model, M = 10 settings, 1000 shots each, ideal
        // sampling from a product target: fidelity >= 0.99.
        let n = 4;
        let target = near_product_init(n, 1, 0.2, 55);
        let settings = generate_settings(10, n, 41);
        let dataset = dataset_from_probs(
            settings,
            |s| dense_probs(&target, &s.rotations),
            1000,
            17,
        );
        let config = FitConfig::new(1, 7);
        let (fit, report) = shadow_fit(&dataset, &config).unwrap();
        let fa = crate::mps::contract(&fit).unwrap();
        let fb = crate::mps::contract(&target).unwrap();
        let fid = crate::mps::fidelity(&fa, &fb).unwrap();
        assert!(fid >= 0.99, "fidelity {fid}, report {report:?}");
    }

    #[test]
    fn fit_is_seed_deterministic() {
        let n = 3;
        let target = near_product_init(n, 2, 0.2, 1);
        let settings = generate_settings(4, n, 2);
        let dataset = dataset_from_probs(
            settings,
            |s| dense_probs(&target, &s.rotations),
            300,
            3,
        );
        let mut config = FitConfig::new(2, 11);
        config.max_epochs = 60;
        let (a, _) = shadow_fit(&dataset, &config).unwrap();
        let (b, _) = shadow_fit(&dataset, &config).unwrap();
        for (ta, tb) in a.tensors.iter().zip(&b.tensors) {
            for (x, y) in ta.data.iter().zip(&tb.data) {
                assert_eq!(x, y);
            }
        }
    }
}
