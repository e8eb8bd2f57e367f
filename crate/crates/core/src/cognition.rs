//! Semantic cognitive information and entropy.
//!
//! A cognitive system that understands a fraction c of a message's meaning
//! gains c*H_s and loses (1-c)*H_s, for a net (2c - 1)*H_s bits. Positive
//! values are constructive cognition, negative values destructive; c = 0.5
//! is the cancellation point. Accuracy is continuous in [0, 1], not a binary
//! correct/wrong outcome.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::world::{logical_probability, FiniteWorld, SemanticMessageSet};

/// Cognition accuracy c(x) per message id.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyProfile {
    accuracies: BTreeMap<String, f64>,
}

impl AccuracyProfile {
    pub fn new(accuracies: BTreeMap<String, f64>) -> Result<Self> {
        for (id, &c) in &accuracies {
            if !c.is_finite() || !(0.0..=1.0).contains(&c) {
                return Err(Error::Domain(format!(
                    "accuracies: accuracy of message '{id}' is {c}, must be in [0, 1]"
                )));
            }
        }
        Ok(Self { accuracies })
    }

    /// Same accuracy for every message of a set.
    pub fn uniform(msgs: &SemanticMessageSet, c: f64) -> Result<Self> {
        Self::new(msgs.iter().map(|m| (m.id().to_string(), c)).collect())
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.accuracies.get(id).copied()
    }

    pub fn accuracies(&self) -> &BTreeMap<String, f64> {
        &self.accuracies
    }

    /// Checks the profile covers exactly the ids of `msgs`.
    fn validate_against(&self, msgs: &SemanticMessageSet) -> Result<()> {
        for msg in msgs.iter() {
            if !self.accuracies.contains_key(msg.id()) {
                return Err(Error::Structural(format!(
                    "accuracies: no accuracy given for message '{}'",
                    msg.id()
                )));
            }
        }
        if self.accuracies.len() != msgs.len() {
            let extra = self
                .accuracies
                .keys()
                .find(|id| msgs.iter().all(|m| m.id() != id.as_str()))
                .expect("profile has an id outside the message set");
            return Err(Error::Structural(format!(
                "accuracies: accuracy given for unknown message '{extra}'"
            )));
        }
        Ok(())
    }
}

/// Net cognitive information in bits for a single message with semantic
/// information `h_s` understood at accuracy `c`:
/// c*h_s - (1-c)*h_s = (2c - 1)*h_s.
pub fn cognitive_information(h_s: f64, c: f64) -> Result<f64> {
    if !c.is_finite() || !(0.0..=1.0).contains(&c) {
        return Err(Error::Domain(format!(
            "c: accuracy is {c}, must be in [0, 1]"
        )));
    }
    if !h_s.is_finite() || h_s < 0.0 {
        return Err(Error::Domain(format!(
            "h_s: semantic information is {h_s}, must be >= 0"
        )));
    }
    Ok(c * h_s - (1.0 - c) * h_s)
}

/// Semantic cognitive entropy in bits over a message set: the correctly
/// understood share of each message's entropy contribution minus the
/// misunderstood share,
/// sum_i c(x_i) p_s(x_i) log2(1/p_s(x_i)) - sum_i (1-c(x_i)) p_s(x_i) log2(1/p_s(x_i)).
pub fn cognitive_entropy(
    world: &FiniteWorld,
    msgs: &SemanticMessageSet,
    profile: &AccuracyProfile,
) -> Result<f64> {
    profile.validate_against(msgs)?;
    let mut acquired = 0.0;
    let mut lost = 0.0;
    for msg in msgs.iter() {
        let p = logical_probability(world, msg)?;
        if p <= 0.0 {
            return Err(Error::Domain(format!(
                "logical probability of message '{}' is zero (its truth-set states carry no mass)",
                msg.id()
            )));
        }
        let c = profile.get(msg.id()).expect("validated above");
        let term = p * (1.0 / p).log2();
        acquired += c * term;
        lost += (1.0 - c) * term;
    }
    Ok(acquired - lost)
}

/// Samples `cognitive_information` at `n_points` equally spaced accuracies
/// in [0, 1]. Returns (accuracy, bits) pairs; for h_s > 0 the curve rises
/// strictly from -h_s to +h_s.
pub fn cognitive_curve(h_s: f64, n_points: usize) -> Result<Vec<(f64, f64)>> {
    if n_points < 2 {
        return Err(Error::Domain(format!(
            "n_points: got {n_points}, need at least 2 to span [0, 1]"
        )));
    }
    let step = 1.0 / (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            let c = if i + 1 == n_points {
                1.0
            } else {
                i as f64 * step
            };
            cognitive_information(h_s, c).map(|bits| (c, bits))
        })
        .collect()
}
