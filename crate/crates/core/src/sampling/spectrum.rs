//! Spectrum-mapping scenario generator.
//!
//! Locations form a 1-D grid; the signal-space matrix holds the large-scale
//! power gain d^(-alpha) between every pair of locations, with the distance
//! clamped below at 1 m so co-located pairs stay finite. Sources sit on K
//! random grid points and transmit at a common power.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{SampleSpace, SamplingScenario, SparseSignal};
use crate::error::{Error, Result};

/// Shortest propagation distance: gains are computed on max(d, 1) metres.
pub const MIN_DISTANCE_M: f64 = 1.0;

/// A generated spectrum-mapping instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumScenario {
    pub scenario: SamplingScenario,
    /// Channel fading matrix playing the role of the signal-space matrix
    /// Psi: entry (i, j) is the gain from grid point j to grid point i.
    pub fading: DMatrix<Complex64>,
    /// Ground-truth source vector: K grid indices at the common amplitude
    /// sqrt(source_power).
    pub signal: SparseSignal,
    /// Grid positions in metres.
    pub positions: Vec<f64>,
}

/// Places `k` sources uniformly at random on an `n`-point grid spanning
/// `grid_extent` metres and derives the scenario statistics:
/// gamma_bar = source_power / noise_var, and beta_bar is the mean gain over
/// the channels from the source locations to every grid point.
pub fn make_spectrum_scenario(
    n: usize,
    k: usize,
    pathloss_exponent: f64,
    grid_extent: f64,
    source_power: f64,
    noise_var: f64,
    seed: u64,
) -> Result<SpectrumScenario> {
    if n == 0 {
        return Err(Error::Domain("n: grid must have at least one point".into()));
    }
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "k: source count {k} must satisfy 1 <= k <= n = {n}"
        )));
    }
    if !pathloss_exponent.is_finite() || pathloss_exponent < 0.0 {
        return Err(Error::Domain(format!(
            "pathloss_exponent: {pathloss_exponent} must be finite and >= 0"
        )));
    }
    if !grid_extent.is_finite() || grid_extent <= 0.0 {
        return Err(Error::Domain(format!(
            "grid_extent: {grid_extent} must be finite and > 0"
        )));
    }
    if !source_power.is_finite() || source_power <= 0.0 {
        return Err(Error::Domain(format!(
            "source_power: {source_power} must be finite and > 0"
        )));
    }
    if !noise_var.is_finite() || noise_var <= 0.0 {
        return Err(Error::Domain(format!(
            "noise_var: {noise_var} must be finite and > 0 (the SNR is source_power / noise_var)"
        )));
    }

    let positions: Vec<f64> = if n == 1 {
        vec![0.0]
    } else {
        let spacing = grid_extent / (n - 1) as f64;
        (0..n).map(|i| i as f64 * spacing).collect()
    };
    let fading = DMatrix::from_fn(n, n, |i, j| {
        let distance = (positions[i] - positions[j]).abs().max(MIN_DISTANCE_M);
        Complex64::new(distance.powf(-pathloss_exponent), 0.0)
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut support = rand::seq::index::sample(&mut rng, n, k).into_vec();
    support.sort_unstable();
    let amplitude = Complex64::new(source_power.sqrt(), 0.0);
    let signal = SparseSignal::new(n, support.clone(), vec![amplitude; k])?;

    let gamma_bar = source_power / noise_var;
    let beta_bar = support
        .iter()
        .map(|&j| fading.column(j).iter().map(|g| g.re).sum::<f64>())
        .sum::<f64>()
        / (n * k) as f64;

    let scenario = SamplingScenario::new(n, k, gamma_bar, beta_bar, noise_var, SampleSpace::Data)?;
    Ok(SpectrumScenario {
        scenario,
        fading,
        signal,
        positions,
    })
}
