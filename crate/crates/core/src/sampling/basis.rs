//! Unitary sparse bases: identity, DFT, DCT-II, and Haar.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Identity,
    Dft,
    Dct,
    Haar,
}

/// An N x N unitary basis matrix Psi; the signal is w = Psi * v with v
/// sparse.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseBasis {
    kind: BasisKind,
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl SparseBasis {
    pub fn new(kind: BasisKind, n: usize) -> Result<Self> {
        match kind {
            BasisKind::Identity => Self::identity(n),
            BasisKind::Dft => Self::dft(n),
            BasisKind::Dct => Self::dct(n),
            BasisKind::Haar => Self::haar(n),
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            kind: BasisKind::Identity,
            n,
            matrix: DMatrix::identity(n, n),
        })
    }

    /// Unitary DFT: entry (j, k) is exp(-2*pi*i*j*k / n) / sqrt(n).
    pub fn dft(n: usize) -> Result<Self> {
        check_dim(n)?;
        let scale = 1.0 / (n as f64).sqrt();
        let matrix = DMatrix::from_fn(n, n, |j, k| {
            let angle = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
            Complex64::from_polar(scale, angle)
        });
        Ok(Self {
            kind: BasisKind::Dft,
            n,
            matrix,
        })
    }

    /// Orthonormal DCT-II synthesis matrix: column k holds the cosine
    /// basis function of frequency k.
    pub fn dct(n: usize) -> Result<Self> {
        check_dim(n)?;
        let matrix = DMatrix::from_fn(n, n, |j, k| {
            let scale = if k == 0 {
                (1.0 / n as f64).sqrt()
            } else {
                (2.0 / n as f64).sqrt()
            };
            let angle = std::f64::consts::PI * (2.0 * j as f64 + 1.0) * k as f64 / (2.0 * n as f64);
            Complex64::new(scale * angle.cos(), 0.0)
        });
        Ok(Self {
            kind: BasisKind::Dct,
            n,
            matrix,
        })
    }

    /// Orthonormal Haar wavelet basis. Requires n to be a power of two.
    pub fn haar(n: usize) -> Result<Self> {
        check_dim(n)?;
        if !n.is_power_of_two() {
            return Err(Error::Capability(format!(
                "n: Haar basis requires a power-of-two dimension, got {n}"
            )));
        }
        // rows of h are the orthonormal Haar analysis functions; the basis
        // matrix is its transpose so columns are basis vectors
        let mut h = DMatrix::from_element(1, 1, 1.0f64);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        while h.nrows() < n {
            let half = h.nrows();
            let scaling = h.kronecker(&DMatrix::from_row_slice(1, 2, &[inv_sqrt2, inv_sqrt2]));
            let detail = DMatrix::<f64>::identity(half, half).kronecker(&DMatrix::from_row_slice(
                1,
                2,
                &[inv_sqrt2, -inv_sqrt2],
            ));
            let mut next = DMatrix::zeros(2 * half, 2 * half);
            next.view_mut((0, 0), (half, 2 * half)).copy_from(&scaling);
            next.view_mut((half, 0), (half, 2 * half))
                .copy_from(&detail);
            h = next;
        }
        let matrix = h.transpose().map(|e| Complex64::new(e, 0.0));
        Ok(Self {
            kind: BasisKind::Haar,
            n,
            matrix,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Structural(
            "n: basis dimension must be at least 1".into(),
        ));
    }
    Ok(())
}
