//! Error types shared by every module of the crate.

use std::fmt;

/// Errors produced by constructors and operations.
///
/// The variants separate problems a caller can fix by changing inputs
/// (`Structural`, `Domain`, `Capability`, `Infeasible`) from failures inside
/// an algorithm (`Numerical`). Messages name the offending field or value.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Shape or identity problem: unknown ids, duplicates, dimension
    /// mismatches, non-stochastic rows.
    Structural(String),
    /// Value outside the mathematical domain of an operation, e.g. a zero
    /// logical probability or an accuracy outside [0, 1].
    Domain(String),
    /// Instance exceeds a configured limit (optimizer dimension caps,
    /// Haar basis on a non power-of-two size).
    Capability(String),
    /// Numerical failure inside an algorithm, e.g. a rank-deficient
    /// least-squares system.
    Numerical(String),
    /// Measurement planning cannot satisfy `required <= n`; carries the
    /// unclamped measurement count.
    Infeasible { required: usize, n: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Structural(msg) => write!(f, "structural error: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capability(msg) => write!(f, "capability error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::Infeasible { required, n } => write!(
                f,
                "infeasible: {required} measurements required but only n = {n} available"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
