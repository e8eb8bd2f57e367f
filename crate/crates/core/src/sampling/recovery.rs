//! Sparse recovery by orthogonal matching pursuit.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::SparseSignal;
use crate::error::{Error, Result};

/// Outcome of a recovery attempt. `support_correct` and `squared_error`
/// are filled in when the caller provides the ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub estimate: SparseSignal,
    pub residual_norm: f64,
    pub support_correct: Option<bool>,
    pub squared_error: Option<f64>,
}

/// Summary of a recovery for serialization (the estimate itself is complex
/// valued and kept out of flat reports).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoverySummary {
    pub residual_norm: f64,
    pub support_correct: Option<bool>,
    pub squared_error: Option<f64>,
}

impl RecoveryResult {
    pub fn summary(&self) -> RecoverySummary {
        RecoverySummary {
            residual_norm: self.residual_norm,
            support_correct: self.support_correct,
            squared_error: self.squared_error,
        }
    }
}

/// Least-squares coefficients restricted to `support`: solves
/// min ||phi_S x - r|| by the normal equations.
pub fn least_squares_on_support(
    phi: &DMatrix<Complex64>,
    r: &DVector<Complex64>,
    support: &[usize],
) -> Result<Vec<Complex64>> {
    if support.is_empty() {
        return Err(Error::Domain(
            "support: must contain at least one index".into(),
        ));
    }
    for &j in support {
        if j >= phi.ncols() {
            return Err(Error::Structural(format!(
                "support: column {j} out of range for {} columns",
                phi.ncols()
            )));
        }
    }
    if r.len() != phi.nrows() {
        return Err(Error::Structural(format!(
            "r: length {} does not match {} measurement rows",
            r.len(),
            phi.nrows()
        )));
    }
    solve_ls(phi, r, support).ok_or_else(|| {
        Error::Numerical(format!(
            "least squares: support columns {support:?} are rank deficient"
        ))
    })
}

fn solve_ls(
    phi: &DMatrix<Complex64>,
    r: &DVector<Complex64>,
    support: &[usize],
) -> Option<Vec<Complex64>> {
    let sub = phi.select_columns(support.iter());
    let gram = sub.adjoint() * &sub;
    let rhs = sub.adjoint() * r;
    let solution = gram.cholesky()?.solve(&rhs);
    Some(solution.iter().copied().collect())
}

/// Orthogonal matching pursuit with exactly `k` iterations (the sparsity is
/// assumed known).
///
/// Each iteration picks the unselected column with the largest
/// norm-normalized correlation to the residual (ties broken by lowest
/// index), then re-fits all coefficients by least squares on the selected
/// support. A rank-deficient support at any iteration is a numerical error
/// naming that iteration.
pub fn omp_recover(
    phi: &DMatrix<Complex64>,
    r: &DVector<Complex64>,
    k: usize,
    truth: Option<&SparseSignal>,
) -> Result<RecoveryResult> {
    let m = phi.nrows();
    let n = phi.ncols();
    if k == 0 {
        return Err(Error::Domain("k: sparsity must be at least 1".into()));
    }
    if k > m {
        return Err(Error::Domain(format!(
            "k: sparsity {k} exceeds measurement count m = {m}"
        )));
    }
    if r.len() != m {
        return Err(Error::Structural(format!(
            "r: length {} does not match {m} measurement rows",
            r.len()
        )));
    }
    if let Some(t) = truth {
        if t.n() != n {
            return Err(Error::Structural(format!(
                "truth: dimension {} does not match {n} columns",
                t.n()
            )));
        }
    }

    let column_norms: Vec<f64> = (0..n).map(|j| phi.column(j).norm()).collect();
    let mut selected: Vec<usize> = Vec::with_capacity(k);
    let mut in_support = vec![false; n];
    let mut residual = r.clone();
    let mut coefficients: Vec<Complex64> = Vec::new();

    for iteration in 1..=k {
        let mut best_index = None;
        let mut best_score = -1.0;
        for j in 0..n {
            if in_support[j] {
                continue;
            }
            let score = if column_norms[j] > 0.0 {
                phi.column(j).dotc(&residual).norm() / column_norms[j]
            } else {
                0.0
            };
            if score > best_score {
                best_score = score;
                best_index = Some(j);
            }
        }
        let chosen = best_index.ok_or_else(|| {
            Error::Numerical(format!(
                "omp: no selectable column left at iteration {iteration}"
            ))
        })?;
        selected.push(chosen);
        in_support[chosen] = true;

        coefficients = solve_ls(phi, r, &selected).ok_or_else(|| {
            Error::Numerical(format!(
                "omp: selected support is rank deficient at iteration {iteration}"
            ))
        })?;
        let sub = phi.select_columns(selected.iter());
        residual = r - sub * DVector::from_column_slice(&coefficients);
    }

    let estimate = SparseSignal::from_estimate(n, selected, coefficients);
    let (support_correct, squared_error) = match truth {
        Some(t) => {
            let mut est_support: Vec<usize> = estimate.support().to_vec();
            let mut true_support: Vec<usize> = t.support().to_vec();
            est_support.sort_unstable();
            true_support.sort_unstable();
            let diff = estimate.to_dense() - t.to_dense();
            (Some(est_support == true_support), Some(diff.norm_squared()))
        }
        None => (None, None),
    };
    Ok(RecoveryResult {
        residual_norm: residual.norm(),
        estimate,
        support_correct,
        squared_error,
    })
}
