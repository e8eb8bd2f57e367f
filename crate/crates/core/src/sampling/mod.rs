//! Compressed-sensing sampling models, estimation-error bounds, and
//! measurement planning.
//!
//! A measurement vector is r = Theta * Psi * v + n: a row-selection matrix
//! [`SelectionMatrix`] picks M of N entries, [`SparseBasis`] maps the
//! K-sparse source vector v into signal space, and the noise is circular
//! complex Gaussian. The lower bound on the total estimation error of v is
//! K / (M * gamma_bar * beta_bar), which [`min_measurements`] inverts into
//! the smallest measurement count meeting a target error. [`monte_carlo_crlb`]
//! verifies the bound empirically on a calibrated linear-Gaussian model, and
//! the spectrum-mapping generator in [`spectrum`] produces concrete
//! path-loss scenarios.
//!
//! Sampling a semantic-space feature vector uses the identical machinery;
//! scenarios carry a [`SampleSpace`] tag to record which space they model,
//! and the tag never changes the numbers.

mod basis;
mod monte_carlo;
mod recovery;
pub mod spectrum;

pub use basis::{BasisKind, SparseBasis};
pub use monte_carlo::{monte_carlo_crlb, trial_seed, Estimator, MonteCarloReport};
pub use recovery::{least_squares_on_support, omp_recover, RecoveryResult};
pub use spectrum::{make_spectrum_scenario, SpectrumScenario};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::cognition::cognitive_information;
use crate::error::{Error, Result};

/// Binary row-selection matrix: each row has a single 1, and no two rows
/// select the same column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionMatrix {
    n_cols: usize,
    rows: Vec<usize>,
}

impl SelectionMatrix {
    /// Rows select `indices` in order. Indices must be distinct and below
    /// `n` (which also forces M <= N).
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural(
                "n: ambient dimension must be at least 1".into(),
            ));
        }
        if indices.is_empty() {
            return Err(Error::Structural(
                "indices: must select at least one entry".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &idx in indices {
            if idx >= n {
                return Err(Error::Structural(format!(
                    "indices: index {idx} out of range for dimension {n}"
                )));
            }
            if seen[idx] {
                return Err(Error::Structural(format!(
                    "indices: index {idx} selected more than once"
                )));
            }
            seen[idx] = true;
        }
        Ok(Self {
            n_cols: n,
            rows: indices.to_vec(),
        })
    }

    /// Number of measurements M.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Ambient dimension N.
    pub fn n(&self) -> usize {
        self.n_cols
    }

    pub fn selected_indices(&self) -> &[usize] {
        &self.rows
    }

    /// Matrix-free application: plain index selection.
    pub fn select<T: Copy>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n_cols {
            return Err(Error::Structural(format!(
                "x: length {} does not match dimension {}",
                x.len(),
                self.n_cols
            )));
        }
        Ok(self.rows.iter().map(|&i| x[i]).collect())
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if x.len() != self.n_cols {
            return Err(Error::Structural(format!(
                "x: length {} does not match dimension {}",
                x.len(),
                self.n_cols
            )));
        }
        Ok(DVector::from_iterator(
            self.rows.len(),
            self.rows.iter().map(|&i| x[i]),
        ))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut mat = DMatrix::zeros(self.rows.len(), self.n_cols);
        for (row, &col) in self.rows.iter().enumerate() {
            mat[(row, col)] = 1.0;
        }
        mat
    }
}

/// Builds the M x N selection matrix picking `indices` in order.
pub fn build_selection_matrix(n: usize, indices: &[usize]) -> Result<SelectionMatrix> {
    SelectionMatrix::new(n, indices)
}

/// A K-sparse vector: K distinct support indices with non-zero complex
/// amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSignal {
    n: usize,
    support: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseSignal {
    pub fn new(n: usize, support: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Structural(
                "support: must contain at least one index".into(),
            ));
        }
        if support.len() != values.len() {
            return Err(Error::Structural(format!(
                "values: {} amplitudes for {} support indices",
                values.len(),
                support.len()
            )));
        }
        if support.len() > n {
            return Err(Error::Structural(format!(
                "support: {} indices exceed dimension {n}",
                support.len()
            )));
        }
        let mut seen = vec![false; n];
        for &idx in &support {
            if idx >= n {
                return Err(Error::Structural(format!(
                    "support: index {idx} out of range for dimension {n}"
                )));
            }
            if seen[idx] {
                return Err(Error::Structural(format!("support: duplicate index {idx}")));
            }
            seen[idx] = true;
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() || v.norm() == 0.0 {
                return Err(Error::Structural(format!(
                    "values: amplitude {i} is {v}, must be finite and non-zero"
                )));
            }
        }
        Ok(Self { n, support, values })
    }

    /// Estimates relax the non-zero-amplitude rule: a least-squares
    /// coefficient can legitimately be zero.
    pub(crate) fn from_estimate(n: usize, support: Vec<usize>, values: Vec<Complex64>) -> Self {
        Self { n, support, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn to_dense(&self) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.n);
        for (&idx, &val) in self.support.iter().zip(self.values.iter()) {
            v[idx] = val;
        }
        v
    }
}

/// Which space a scenario samples. The tag is descriptive; both spaces run
/// through the same numerical engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleSpace {
    Data,
    Semantic,
}

/// Dimensions and statistics of a sampling problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingScenario {
    pub n: usize,
    pub k: usize,
    /// Average linear SNR over the signal sources.
    pub gamma_bar: f64,
    /// Average linear large-scale power gain over the channels.
    pub beta_bar: f64,
    /// Per-measurement complex noise variance.
    pub noise_var: f64,
    pub space: SampleSpace,
}

impl SamplingScenario {
    pub fn new(
        n: usize,
        k: usize,
        gamma_bar: f64,
        beta_bar: f64,
        noise_var: f64,
        space: SampleSpace,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n: dimension must be at least 1".into()));
        }
        if k == 0 || k > n {
            return Err(Error::Domain(format!(
                "k: sparsity {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        if !gamma_bar.is_finite() || gamma_bar <= 0.0 {
            return Err(Error::Domain(format!(
                "gamma_bar: {gamma_bar} must be finite and > 0"
            )));
        }
        if !beta_bar.is_finite() || beta_bar <= 0.0 {
            return Err(Error::Domain(format!(
                "beta_bar: {beta_bar} must be finite and > 0"
            )));
        }
        if !noise_var.is_finite() || noise_var < 0.0 {
            return Err(Error::Domain(format!(
                "noise_var: {noise_var} must be finite and >= 0"
            )));
        }
        Ok(Self {
            n,
            k,
            gamma_bar,
            beta_bar,
            noise_var,
            space,
        })
    }

    /// A scenario whose noise variance is pinned to 1/gamma_bar, the level
    /// at which the calibrated Monte-Carlo model attains the error bound
    /// exactly.
    pub fn calibrated(
        n: usize,
        k: usize,
        gamma_bar: f64,
        beta_bar: f64,
        space: SampleSpace,
    ) -> Result<Self> {
        if !gamma_bar.is_finite() || gamma_bar <= 0.0 {
            return Err(Error::Domain(format!(
                "gamma_bar: {gamma_bar} must be finite and > 0"
            )));
        }
        Self::new(n, k, gamma_bar, beta_bar, 1.0 / gamma_bar, space)
    }
}

/// Draws one measurement vector r = Theta * Psi * v + n with seeded circular
/// complex Gaussian noise of the given per-entry variance. `noise_var = 0`
/// returns the exact noiseless product.
pub fn sample(
    theta: &SelectionMatrix,
    psi: &SparseBasis,
    v: &SparseSignal,
    noise_var: f64,
    seed: u64,
) -> Result<DVector<Complex64>> {
    sample_with_matrix(theta, psi.matrix(), v, noise_var, seed)
}

/// [`sample`] for a raw signal-space matrix Psi, e.g. the fading matrix of a
/// spectrum scenario.
pub fn sample_with_matrix(
    theta: &SelectionMatrix,
    psi: &DMatrix<Complex64>,
    v: &SparseSignal,
    noise_var: f64,
    seed: u64,
) -> Result<DVector<Complex64>> {
    if psi.nrows() != theta.n() || psi.ncols() != v.n() {
        return Err(Error::Structural(format!(
            "psi: {} x {} matrix incompatible with selection dimension {} and signal dimension {}",
            psi.nrows(),
            psi.ncols(),
            theta.n(),
            v.n()
        )));
    }
    if !noise_var.is_finite() || noise_var < 0.0 {
        return Err(Error::Domain(format!(
            "noise_var: {noise_var} must be finite and >= 0"
        )));
    }
    let signal = psi * v.to_dense();
    let mut r = theta.apply(&signal)?;
    if noise_var > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = (noise_var / 2.0).sqrt();
        for entry in r.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *entry += Complex64::new(re * sigma, im * sigma);
        }
    }
    Ok(r)
}

/// Lower bound on the total estimation error of the K-sparse source vector:
/// K / (M * gamma_bar * beta_bar), valid for K <= M.
pub fn crlb(k: usize, m: usize, gamma_bar: f64, beta_bar: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("k: sparsity must be at least 1".into()));
    }
    if k > m {
        return Err(Error::Domain(format!(
            "k: sparsity {k} exceeds measurement count m = {m}"
        )));
    }
    if !gamma_bar.is_finite() || gamma_bar <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma_bar: {gamma_bar} must be finite and > 0"
        )));
    }
    if !beta_bar.is_finite() || beta_bar <= 0.0 {
        return Err(Error::Domain(format!(
            "beta_bar: {beta_bar} must be finite and > 0"
        )));
    }
    Ok(k as f64 / (m as f64 * gamma_bar * beta_bar))
}

/// Smallest measurement count whose error bound meets the target `eps`:
/// ceil(K / (gamma_bar * beta_bar * eps)), clamped below at K. Fails with
/// the unclamped count when it exceeds the dimension `n`.
///
/// When gamma_bar * beta_bar * eps >= 1 this returns exactly K.
pub fn min_measurements(
    k: usize,
    gamma_bar: f64,
    beta_bar: f64,
    eps: f64,
    n: usize,
) -> Result<usize> {
    if k == 0 {
        return Err(Error::Domain("k: sparsity must be at least 1".into()));
    }
    if k > n {
        return Err(Error::Domain(format!(
            "k: sparsity {k} exceeds dimension n = {n}"
        )));
    }
    if !gamma_bar.is_finite() || gamma_bar <= 0.0 {
        return Err(Error::Domain(format!(
            "gamma_bar: {gamma_bar} must be finite and > 0"
        )));
    }
    if !beta_bar.is_finite() || beta_bar <= 0.0 {
        return Err(Error::Domain(format!(
            "beta_bar: {beta_bar} must be finite and > 0"
        )));
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::Domain(format!(
            "eps: target error {eps} must be finite and > 0"
        )));
    }
    // float-to-int casts saturate, so astronomically large requirements
    // still report a usable count in the error
    let required = (k as f64 / (gamma_bar * beta_bar * eps)).ceil() as usize;
    if required > n {
        return Err(Error::Infeasible { required, n });
    }
    Ok(required.max(k))
}

/// Cognitive entropy of a sampled semantic message under sampling error
/// `eps`: the accuracy is 1 - eps, giving (1 - 2*eps) * h_s bits.
pub fn sampling_cognitive_entropy(h_s: f64, eps: f64) -> Result<f64> {
    if !eps.is_finite() || !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!(
            "eps: sampling error {eps} must be in [0, 1]"
        )));
    }
    cognitive_information(h_s, 1.0 - eps)
}
