//! Finite discrete worlds, semantic messages, and the entropy measures
//! built on logical probability.
//!
//! A [`FiniteWorld`] holds the statistical distribution p(w) over world
//! states. A [`SemanticMessage`] is true on a subset of those states; its
//! logical probability is the probability mass of that subset. Everything
//! downstream (semantic information, semantic entropy, the fuzzy variant)
//! is computed in bits.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// Absolute tolerance for validating probability sums.
pub const PROB_TOLERANCE: f64 = 1e-9;

/// A finite set of world states with a statistical probability per state.
///
/// States are opaque string identifiers; construction order is preserved
/// and used for all deterministic output.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteWorld {
    states: Vec<String>,
    probs: Vec<f64>,
    index: BTreeMap<String, usize>,
}

impl FiniteWorld {
    /// Builds a world from parallel state/probability lists.
    ///
    /// Requires at least one state, unique state ids, probabilities in
    /// [0, 1] summing to 1 within [`PROB_TOLERANCE`].
    pub fn new(states: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Structural(
                "states: world must have at least one state".into(),
            ));
        }
        if states.len() != probs.len() {
            return Err(Error::Structural(format!(
                "probs: expected {} probabilities for {} states, got {}",
                states.len(),
                states.len(),
                probs.len()
            )));
        }
        let mut index = BTreeMap::new();
        for (i, id) in states.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Structural(format!(
                    "states: duplicate state id '{id}'"
                )));
            }
        }
        for (id, &p) in states.iter().zip(probs.iter()) {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Structural(format!(
                    "probs: probability of state '{id}' is {p}, must be a finite value >= 0"
                )));
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::Structural(format!(
                "probs: probabilities sum to {total}, expected 1 within {PROB_TOLERANCE}"
            )));
        }
        Ok(Self {
            states,
            probs,
            index,
        })
    }

    /// Convenience: a world with equal probability on every state.
    pub fn uniform(states: Vec<String>) -> Result<Self> {
        let n = states.len();
        if n == 0 {
            return Err(Error::Structural(
                "states: world must have at least one state".into(),
            ));
        }
        let p = 1.0 / n as f64;
        Self::new(states, vec![p; n])
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        false // at least one state by construction
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Index of a state in construction order, if it exists.
    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn prob_of(&self, id: &str) -> Option<f64> {
        self.index_of(id).map(|i| self.probs[i])
    }

    /// Total probability mass (1 within tolerance; kept explicit because the
    /// logical-probability ratio divides by it).
    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// A message with a crisp truth set: the states in which it is true.
#[derive(Debug, Clone, PartialEq)]
pub struct SemanticMessage {
    id: String,
    truth_set: BTreeSet<String>,
}

impl SemanticMessage {
    /// A message must be true somewhere; an everywhere-false message has
    /// zero logical probability and no defined information content.
    pub fn new<I, S>(id: impl Into<String>, truth_set: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let id = id.into();
        let truth_set: BTreeSet<String> = truth_set.into_iter().map(Into::into).collect();
        if truth_set.is_empty() {
            return Err(Error::Structural(format!(
                "truth_set: message '{id}' has an empty truth set"
            )));
        }
        Ok(Self { id, truth_set })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn truth_set(&self) -> &BTreeSet<String> {
        &self.truth_set
    }
}

/// An ordered, non-empty collection of messages with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct SemanticMessageSet {
    messages: Vec<SemanticMessage>,
}

impl SemanticMessageSet {
    pub fn new(messages: Vec<SemanticMessage>) -> Result<Self> {
        if messages.is_empty() {
            return Err(Error::Structural(
                "messages: message set must be non-empty".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for msg in &messages {
            if !seen.insert(msg.id().to_string()) {
                return Err(Error::Structural(format!(
                    "messages: duplicate message id '{}'",
                    msg.id()
                )));
            }
        }
        Ok(Self { messages })
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn messages(&self) -> &[SemanticMessage] {
        &self.messages
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SemanticMessage> {
        self.messages.iter()
    }

    pub fn get(&self, idx: usize) -> Option<&SemanticMessage> {
        self.messages.get(idx)
    }
}

/// A fuzzy concept: a membership degree per state and a partition of the
/// states into classes.
///
/// The concept is self-contained; callers that pair it with a
/// [`FiniteWorld`] should check the membership keys against the world's
/// states (the CLI does).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyConcept {
    memberships: BTreeMap<String, f64>,
    classes: Vec<BTreeSet<String>>,
}

impl FuzzyConcept {
    /// Validates that every membership is in [0, 1] with at least one
    /// positive, and that `classes` partition the membership keys
    /// (pairwise disjoint, covering all of them).
    pub fn new(memberships: BTreeMap<String, f64>, classes: Vec<BTreeSet<String>>) -> Result<Self> {
        if memberships.is_empty() {
            return Err(Error::Structural(
                "memberships: must cover at least one state".into(),
            ));
        }
        for (id, &mu) in &memberships {
            if !mu.is_finite() || !(0.0..=1.0).contains(&mu) {
                return Err(Error::Structural(format!(
                    "memberships: membership of '{id}' is {mu}, must be in [0, 1]"
                )));
            }
        }
        let mut covered = BTreeSet::new();
        for (j, class) in classes.iter().enumerate() {
            for id in class {
                if !memberships.contains_key(id) {
                    return Err(Error::Structural(format!(
                        "classes: class {j} contains unknown state '{id}'"
                    )));
                }
                if !covered.insert(id.clone()) {
                    return Err(Error::Structural(format!(
                        "classes: state '{id}' appears in more than one class"
                    )));
                }
            }
        }
        if covered.len() != memberships.len() {
            let missing = memberships
                .keys()
                .find(|id| !covered.contains(*id))
                .expect("some state is uncovered");
            return Err(Error::Structural(format!(
                "classes: state '{missing}' is not covered by any class"
            )));
        }
        Ok(Self {
            memberships,
            classes,
        })
    }

    pub fn memberships(&self) -> &BTreeMap<String, f64> {
        &self.memberships
    }

    pub fn classes(&self) -> &[BTreeSet<String>] {
        &self.classes
    }

    /// Share of total membership mass falling in each class. Sums to 1
    /// whenever any membership is positive.
    pub fn matching_degrees(&self) -> Result<Vec<f64>> {
        let total: f64 = self.memberships.values().sum();
        if total <= 0.0 {
            return Err(Error::Domain(
                "memberships: all membership degrees are zero; matching degrees undefined".into(),
            ));
        }
        Ok(self
            .classes
            .iter()
            .map(|class| class.iter().map(|id| self.memberships[id]).sum::<f64>() / total)
            .collect())
    }
}

/// Logical probability of a message: the probability mass of its truth set
/// divided by the total world mass.
pub fn logical_probability(world: &FiniteWorld, msg: &SemanticMessage) -> Result<f64> {
    let mut truth_mass = 0.0;
    for id in msg.truth_set() {
        match world.prob_of(id) {
            Some(p) => truth_mass += p,
            None => {
                return Err(Error::Structural(format!(
                    "truth_set: message '{}' refers to unknown state '{id}'",
                    msg.id()
                )))
            }
        }
    }
    Ok(truth_mass / world.total_mass())
}

/// Semantic information of a message in bits: -log2 of its logical
/// probability.
pub fn semantic_information(world: &FiniteWorld, msg: &SemanticMessage) -> Result<f64> {
    let p = logical_probability(world, msg)?;
    if p <= 0.0 {
        return Err(Error::Domain(format!(
            "logical probability of message '{}' is zero (its truth-set states carry no mass)",
            msg.id()
        )));
    }
    Ok(-p.log2())
}

/// Semantic entropy of a message set in bits: -sum of p_s log2 p_s over the
/// messages, using each message's logical probability.
///
/// The logical probabilities are used exactly as computed. Messages may
/// overlap, so the values need not form a distribution and are not
/// renormalized; each term is individually non-negative.
pub fn semantic_entropy(world: &FiniteWorld, msgs: &SemanticMessageSet) -> Result<f64> {
    let mut h = 0.0;
    for msg in msgs.iter() {
        let p = logical_probability(world, msg)?;
        if p <= 0.0 {
            return Err(Error::Domain(format!(
                "logical probability of message '{}' is zero (its truth-set states carry no mass)",
                msg.id()
            )));
        }
        h -= p * p.log2();
    }
    Ok(h)
}

/// Fuzzy semantic entropy in bits: Shannon entropy of the matching degrees
/// D_j, where D_j is the share of total membership mass in class j.
///
/// Classes with zero matching degree contribute nothing. The result lies in
/// [0, log2 J].
pub fn fuzzy_semantic_entropy(concept: &FuzzyConcept) -> Result<f64> {
    let degrees = concept.matching_degrees()?;
    Ok(degrees
        .iter()
        .map(|&d| if d > 0.0 { -d * d.log2() } else { 0.0 })
        .sum())
}
