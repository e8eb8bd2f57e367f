//! Information-loss decomposition for semantic compression.
//!
//! The loss H(W) - H(X) between a source and its encoding splits into an
//! intended part H(W) - H(Zbar), where Zbar is the most concise meaning that
//! still fulfils the task, and a lossy part H(Zbar) - H(X). The encoding is
//! lossless in the semantic sense exactly when H(X) >= H(Zbar).
//!
//! H(Zbar) is an input: deriving the most concise task-sufficient meaning is
//! outside the scope of this decomposition, so callers supply it from task
//! knowledge.

use serde::Serialize;

use crate::error::{Error, Result};

/// Entropy triple (bits) describing a compression instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionSpec {
    h_w: f64,
    h_x: f64,
    h_zbar: f64,
}

impl CompressionSpec {
    /// All entropies must be non-negative and the concise meaning cannot
    /// carry more entropy than the source (`h_zbar <= h_w`).
    pub fn new(h_w: f64, h_x: f64, h_zbar: f64) -> Result<Self> {
        for (name, v) in [("h_w", h_w), ("h_x", h_x), ("h_zbar", h_zbar)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Domain(format!(
                    "{name}: entropy is {v}, must be a finite value >= 0"
                )));
            }
        }
        if h_zbar > h_w {
            return Err(Error::Domain(format!(
                "h_zbar: concise-meaning entropy {h_zbar} exceeds source entropy {h_w}"
            )));
        }
        Ok(Self { h_w, h_x, h_zbar })
    }

    pub fn h_w(&self) -> f64 {
        self.h_w
    }

    pub fn h_x(&self) -> f64 {
        self.h_x
    }

    pub fn h_zbar(&self) -> f64 {
        self.h_zbar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompressionVerdict {
    Lossless,
    Lossy,
}

/// The decomposed information loss, all in bits.
///
/// `total` is computed as `intended + lossy`, so the identity holds exactly;
/// it equals H(W) - H(X) up to floating-point rounding. A negative `lossy`
/// (semantic over-provisioning, H(X) > H(Zbar)) is reported as-is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossDecomposition {
    pub total: f64,
    pub intended: f64,
    pub lossy: f64,
    pub verdict: CompressionVerdict,
}

/// Splits the total information loss into intended and lossy parts and
/// classifies the compression.
pub fn decompose_loss(spec: &CompressionSpec) -> LossDecomposition {
    let intended = spec.h_w - spec.h_zbar;
    let lossy = spec.h_zbar - spec.h_x;
    let verdict = if spec.h_x >= spec.h_zbar {
        CompressionVerdict::Lossless
    } else {
        CompressionVerdict::Lossy
    };
    LossDecomposition {
        total: intended + lossy,
        intended,
        lossy,
        verdict,
    }
}
