//! Seeded Monte-Carlo verification of the estimation-error bound.
//!
//! Trials run a calibrated linear-Gaussian model: the support submatrix has
//! exactly orthogonal columns with squared norm M * beta_bar, source
//! amplitudes have unit power, and the noise variance comes from the
//! scenario. With noise variance 1/gamma_bar (see
//! [`SamplingScenario::calibrated`]) the genie least-squares error is
//! exactly K / (M * gamma_bar * beta_bar) in expectation, so the bound is
//! attained rather than merely approached.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::recovery::{least_squares_on_support, omp_recover};
use super::{crlb, SamplingScenario, SparseSignal};
use crate::error::{Error, Result};

/// Which estimator a trial runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    /// Least squares on the true support.
    Genie,
    /// Orthogonal matching pursuit with K iterations, support unknown.
    Omp,
}

/// Aggregated simulation output. `per_trial_squared_error` is ordered by
/// trial index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub empirical_mse: f64,
    pub crlb: f64,
    pub ratio: f64,
    pub per_trial_squared_error: Vec<f64>,
}

/// Sub-seed for one trial: splitmix64 over the master seed and trial index,
/// so any single trial is reproducible in isolation.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial.wrapping_add(1)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) / std::f64::consts::SQRT_2
}

/// Runs `trials` seeded trials of the calibrated model with `m`
/// measurements and reports the mean squared estimation error of the
/// source vector next to the theoretical bound.
///
/// Within one master seed, the genie and OMP estimators see identical
/// supports, matrices, amplitudes, and noise for each trial index.
pub fn monte_carlo_crlb(
    scenario: &SamplingScenario,
    m: usize,
    trials: usize,
    estimator: Estimator,
    seed: u64,
) -> Result<MonteCarloReport> {
    let (n, k) = (scenario.n, scenario.k);
    if m < k || m > n {
        return Err(Error::Domain(format!(
            "m: measurement count {m} must satisfy k = {k} <= m <= n = {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::Domain("trials: need at least 1".into()));
    }
    let bound = crlb(k, m, scenario.gamma_bar, scenario.beta_bar)?;
    let column_scale = (m as f64 * scenario.beta_bar).sqrt();
    let noise_sigma = (scenario.noise_var / 2.0).sqrt();

    let mut per_trial = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial as u64));

        // draw order is fixed so both estimators share the same instance:
        // support, support columns, amplitudes, noise, then (OMP only) the
        // off-support columns
        let support = rand::seq::index::sample(&mut rng, n, k).into_vec();
        let raw = DMatrix::from_fn(m, k, |_, _| standard_complex(&mut rng));
        let phi_support = raw.qr().q() * Complex64::new(column_scale, 0.0);
        let amplitudes: Vec<Complex64> = (0..k)
            .map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU))
            .collect();
        let mut r = &phi_support * DVector::from_column_slice(&amplitudes);
        if scenario.noise_var > 0.0 {
            for entry in r.iter_mut() {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                *entry += Complex64::new(re * noise_sigma, im * noise_sigma);
            }
        }

        let squared_error = match estimator {
            Estimator::Genie => {
                let on_support: Vec<usize> = (0..k).collect();
                let estimate = least_squares_on_support(&phi_support, &r, &on_support)?;
                estimate
                    .iter()
                    .zip(amplitudes.iter())
                    .map(|(e, a)| (e - a).norm_sqr())
                    .sum()
            }
            Estimator::Omp => {
                let mut phi = DMatrix::zeros(m, n);
                for (col, &idx) in support.iter().enumerate() {
                    phi.set_column(idx, &phi_support.column(col));
                }
                let off_scale = Complex64::new(scenario.beta_bar.sqrt(), 0.0);
                for j in 0..n {
                    if !support.contains(&j) {
                        let column =
                            DVector::from_fn(m, |_, _| standard_complex(&mut rng) * off_scale);
                        phi.set_column(j, &column);
                    }
                }
                let truth = SparseSignal::new(n, support.clone(), amplitudes.clone())?;
                let result = omp_recover(&phi, &r, k, Some(&truth))?;
                result.squared_error.expect("truth was provided")
            }
        };
        per_trial.push(squared_error);
    }

    let empirical_mse = per_trial.iter().sum::<f64>() / trials as f64;
    Ok(MonteCarloReport {
        empirical_mse,
        crlb: bound,
        ratio: empirical_mse / bound,
        per_trial_squared_error: per_trial,
    })
}
