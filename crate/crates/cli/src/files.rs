//! Input file schemas and loaders.
//!
//! All inputs are JSON. Unknown fields are rejected so typos surface as
//! validation errors instead of silently ignored settings.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Deserialize;

use semcog::capacity::Channel;
use semcog::sampling::{SampleSpace, SamplingScenario};
use semcog::world::{FiniteWorld, FuzzyConcept, SemanticMessage, SemanticMessageSet};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldFile {
    pub states: Vec<String>,
    pub probs: Vec<f64>,
    #[serde(default)]
    pub messages: Vec<MessageSpec>,
    #[serde(default)]
    pub fuzzy: Option<FuzzySection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MessageSpec {
    pub id: String,
    pub truth_set: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzySection {
    pub memberships: BTreeMap<String, f64>,
    pub classes: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub table: Vec<Vec<f64>>,
    pub output_semantics: Vec<MessageSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub n: usize,
    pub k: usize,
    pub gamma_bar: f64,
    pub beta_bar: f64,
    pub noise_var: f64,
    #[serde(default = "default_space")]
    pub space: SampleSpace,
}

fn default_space() -> SampleSpace {
    SampleSpace::Data
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read '{}': {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("'{}': {e}", path.display())))
}

fn context(path: &Path, err: semcog::Error) -> CliError {
    match err {
        semcog::Error::Numerical(_) => CliError::Internal(format!("'{}': {err}", path.display())),
        _ => CliError::Validation(format!("'{}': {err}", path.display())),
    }
}

/// Loads a world file into the world itself, its message set (when any
/// messages are declared), and its fuzzy concept (when declared).
pub fn load_world(
    path: &Path,
) -> Result<
    (
        FiniteWorld,
        Option<SemanticMessageSet>,
        Option<FuzzyConcept>,
    ),
    CliError,
> {
    let file: WorldFile = read_json(path)?;
    let world = FiniteWorld::new(file.states, file.probs).map_err(|e| context(path, e))?;

    let messages = if file.messages.is_empty() {
        None
    } else {
        let msgs = file
            .messages
            .into_iter()
            .map(|m| SemanticMessage::new(m.id, m.truth_set))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| context(path, e))?;
        let set = SemanticMessageSet::new(msgs).map_err(|e| context(path, e))?;
        for msg in set.iter() {
            for state in msg.truth_set() {
                if world.index_of(state).is_none() {
                    return Err(CliError::Validation(format!(
                        "'{}': truth_set: message '{}' refers to unknown state '{state}'",
                        path.display(),
                        msg.id()
                    )));
                }
            }
        }
        Some(set)
    };

    let fuzzy = match file.fuzzy {
        None => None,
        Some(section) => {
            let declared: BTreeSet<&String> = section.memberships.keys().collect();
            let states: BTreeSet<&String> = world.states().iter().collect();
            if declared != states {
                return Err(CliError::Validation(format!(
                    "'{}': fuzzy.memberships: must cover exactly the world states",
                    path.display()
                )));
            }
            let classes = section
                .classes
                .into_iter()
                .map(|c| c.into_iter().collect::<BTreeSet<String>>())
                .collect();
            Some(FuzzyConcept::new(section.memberships, classes).map_err(|e| context(path, e))?)
        }
    };

    Ok((world, messages, fuzzy))
}

/// Loads a channel file: row-major probability table plus one truth set per
/// output column.
pub fn load_channel(path: &Path) -> Result<Channel, CliError> {
    let file: ChannelFile = read_json(path)?;
    let outputs = file
        .output_semantics
        .into_iter()
        .map(|m| SemanticMessage::new(m.id, m.truth_set))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| context(path, e))?;
    let semantics = SemanticMessageSet::new(outputs).map_err(|e| context(path, e))?;
    Channel::new(file.table, semantics).map_err(|e| context(path, e))
}

/// Loads accuracy values keyed by message id.
pub fn load_accuracies(path: &Path) -> Result<BTreeMap<String, f64>, CliError> {
    read_json(path)
}

pub fn load_scenario(path: &Path) -> Result<SamplingScenario, CliError> {
    let file: ScenarioFile = read_json(path)?;
    SamplingScenario::new(
        file.n,
        file.k,
        file.gamma_bar,
        file.beta_bar,
        file.noise_var,
        file.space,
    )
    .map_err(|e| context(path, e))
}
