//! Semantic information measures over finite discrete worlds, semantic
//! channel capacity as a numerical optimization, compression-loss
//! accounting, cognitive information, and compressed-sensing sampling
//! models with error-bound-driven measurement planning.
//!
//! Everything is computed in bits (base-2 logarithms throughout). All types
//! are immutable after construction and all operations are pure, so the
//! whole API is safe to call concurrently; the optimizers and Monte-Carlo
//! runners take explicit seeds and produce identical results on every run.
//!
//! # Modules
//!
//! - [`world`]: finite worlds, truth sets, logical probability, semantic
//!   and fuzzy semantic entropy
//! - [`capacity`]: the semantic channel objective, its projected-gradient
//!   optimizer, and a Blahut-Arimoto Shannon baseline
//! - [`compression`]: intended-versus-lossy decomposition of the
//!   information loss of an encoding
//! - [`cognition`]: accuracy-weighted cognitive information and entropy
//! - [`sampling`]: selection matrices, sparse bases, OMP recovery, the
//!   estimation-error bound with its measurement planner, and seeded
//!   Monte-Carlo verification

pub mod capacity;
pub mod cognition;
pub mod compression;
pub mod error;
pub mod sampling;
pub mod world;

pub use error::{Error, Result};
