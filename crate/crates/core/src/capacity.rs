//! Semantic channel capacity as a numerical optimization problem, plus a
//! classical Shannon-capacity baseline.
//!
//! The semantic objective over a coding strategy P(X|W) and a fixed channel
//! P(Y|X) is
//!
//!   I(X;Y) - H(W|X) + Hbar_s(Y)
//!
//! where Hbar_s(Y) is the output-marginal-weighted average of the logical
//! information of each received symbol, taken from the truth sets declared
//! in [`Channel::output_semantics`]. The objective is not known to be
//! concave in the strategy, so [`optimize_capacity`] runs multi-start
//! projected gradient ascent and reports the best strategy found; the value
//! is a lower bound on the supremum, not a certified capacity.
//!
//! [`shannon_capacity`] computes the classical max_{p(x)} I(X;Y) by
//! Blahut-Arimoto iteration for comparison; the semantic value can land on
//! either side of it depending on whether the receiver-side logical
//! information outweighs the encoding ambiguity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::world::{logical_probability, FiniteWorld, SemanticMessageSet};

/// Fixed default seed so bare invocations are reproducible.
pub const DEFAULT_SEED: u64 = 42;

/// Row-sum tolerance for conditional probability tables.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// Blahut-Arimoto stops when successive capacity estimates differ by less
/// than this many bits.
const BA_TOLERANCE: f64 = 1e-9;

/// Central-difference step for the numerical gradient.
const GRAD_STEP: f64 = 1e-5;

/// Ascent stops after this many consecutive steps improving by less than
/// [`CONVERGENCE_EPS`].
const CONVERGENCE_EPS: f64 = 1e-10;
const CONVERGENCE_STREAK: usize = 20;

/// All deterministic strategies are used as extra starts when their count
/// `|X|^|W|` does not exceed this.
const DETERMINISTIC_ENUM_CAP: usize = 4096;

fn validate_stochastic_table(table: &[Vec<f64>], what: &str) -> Result<()> {
    if table.is_empty() || table[0].is_empty() {
        return Err(Error::Structural(format!(
            "{what}: table must be non-empty"
        )));
    }
    let width = table[0].len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != width {
            return Err(Error::Structural(format!(
                "{what}: row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        for (j, &p) in row.iter().enumerate() {
            if !p.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(Error::Structural(format!(
                    "{what}: entry ({i}, {j}) is {p}, must be in [0, 1]"
                )));
            }
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
            return Err(Error::Structural(format!(
                "{what}: row {i} sums to {sum}, expected 1 within {ROW_SUM_TOLERANCE}"
            )));
        }
    }
    Ok(())
}

/// A semantic coding strategy: conditional probability P(x|w) with one row
/// per world state and one column per message.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodingStrategy {
    table: Vec<Vec<f64>>,
}

impl CodingStrategy {
    pub fn new(table: Vec<Vec<f64>>) -> Result<Self> {
        validate_stochastic_table(&table, "strategy")?;
        Ok(Self { table })
    }

    /// The deterministic strategy mapping world state `w` to message
    /// `assignment[w]`.
    pub fn deterministic(assignment: &[usize], n_messages: usize) -> Result<Self> {
        if n_messages == 0 {
            return Err(Error::Structural(
                "strategy: need at least one message".into(),
            ));
        }
        let mut table = vec![vec![0.0; n_messages]; assignment.len()];
        for (w, &x) in assignment.iter().enumerate() {
            if x >= n_messages {
                return Err(Error::Structural(format!(
                    "strategy: assignment for world {w} is message {x}, only {n_messages} exist"
                )));
            }
            table[w][x] = 1.0;
        }
        Self::new(table)
    }

    pub fn n_worlds(&self) -> usize {
        self.table.len()
    }

    pub fn n_messages(&self) -> usize {
        self.table[0].len()
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }
}

/// A discrete memoryless channel P(y|x) with a truth set per output symbol.
///
/// The output semantics make "what a received symbol says about the world"
/// an explicit input instead of an implicit convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    table: Vec<Vec<f64>>,
    output_semantics: SemanticMessageSet,
}

impl Channel {
    pub fn new(table: Vec<Vec<f64>>, output_semantics: SemanticMessageSet) -> Result<Self> {
        validate_stochastic_table(&table, "channel")?;
        if output_semantics.len() != table[0].len() {
            return Err(Error::Structural(format!(
                "output_semantics: {} messages for {} output columns",
                output_semantics.len(),
                table[0].len()
            )));
        }
        Ok(Self {
            table,
            output_semantics,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.table.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.table[0].len()
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn output_semantics(&self) -> &SemanticMessageSet {
        &self.output_semantics
    }
}

/// The three terms of the semantic objective, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityTerms {
    pub mutual_information: f64,
    pub ambiguity: f64,
    pub avg_received_logical_info: f64,
}

/// Best objective value found, the strategy achieving it, and its terms.
/// `value` equals `mutual_information - ambiguity + avg_received_logical_info`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityResult {
    pub value: f64,
    pub strategy: CodingStrategy,
    pub terms: CapacityTerms,
}

/// Knobs for both optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Random restarts for projected gradient ascent.
    pub restarts: usize,
    /// Step cap for gradient ascent and iteration cap for Blahut-Arimoto.
    pub max_iters: usize,
    pub seed: u64,
    /// Dimension caps; larger instances are rejected with a capability error.
    pub max_worlds: usize,
    pub max_messages: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 10_000,
            seed: DEFAULT_SEED,
            max_worlds: 6,
            max_messages: 6,
        }
    }
}

fn check_strategy_world(world: &FiniteWorld, strategy: &CodingStrategy) -> Result<()> {
    if strategy.n_worlds() != world.len() {
        return Err(Error::Structural(format!(
            "strategy: {} rows for {} world states",
            strategy.n_worlds(),
            world.len()
        )));
    }
    Ok(())
}

fn check_strategy_channel(strategy: &CodingStrategy, channel: &Channel) -> Result<()> {
    if strategy.n_messages() != channel.n_inputs() {
        return Err(Error::Structural(format!(
            "channel: {} input rows for {} strategy messages",
            channel.n_inputs(),
            strategy.n_messages()
        )));
    }
    Ok(())
}

/// Message marginal p(x) induced by the world distribution and strategy.
fn message_marginal(world: &FiniteWorld, table: &[Vec<f64>]) -> Vec<f64> {
    let n_msgs = table[0].len();
    let mut p_x = vec![0.0; n_msgs];
    for (w, row) in table.iter().enumerate() {
        let pw = world.probs()[w];
        for (j, &p) in row.iter().enumerate() {
            p_x[j] += pw * p;
        }
    }
    p_x
}

fn output_marginal(p_x: &[f64], channel_table: &[Vec<f64>]) -> Vec<f64> {
    let n_out = channel_table[0].len();
    let mut p_y = vec![0.0; n_out];
    for (j, &px) in p_x.iter().enumerate() {
        for (k, &p) in channel_table[j].iter().enumerate() {
            p_y[k] += px * p;
        }
    }
    p_y
}

/// Mutual information I(X;Y) in bits between the encoded message and the
/// channel output. Zero-probability terms contribute nothing.
pub fn mutual_information(
    world: &FiniteWorld,
    strategy: &CodingStrategy,
    channel: &Channel,
) -> Result<f64> {
    check_strategy_world(world, strategy)?;
    check_strategy_channel(strategy, channel)?;
    Ok(mutual_information_raw(
        &message_marginal(world, strategy.table()),
        channel.table(),
    ))
}

fn mutual_information_raw(p_x: &[f64], channel_table: &[Vec<f64>]) -> f64 {
    let p_y = output_marginal(p_x, channel_table);
    let mut bits = 0.0;
    for (j, &px) in p_x.iter().enumerate() {
        if px <= 0.0 {
            continue;
        }
        for (k, &pyx) in channel_table[j].iter().enumerate() {
            if pyx > 0.0 && p_y[k] > 0.0 {
                bits += px * pyx * (pyx / p_y[k]).log2();
            }
        }
    }
    bits
}

/// Encoding ambiguity H(W|X) in bits: how much of the world stays unknown
/// given the encoded message. Zero for any deterministic encoding that maps
/// distinct supported states to distinct messages.
pub fn ambiguity(world: &FiniteWorld, strategy: &CodingStrategy) -> Result<f64> {
    check_strategy_world(world, strategy)?;
    Ok(ambiguity_raw(world.probs(), strategy.table()))
}

fn ambiguity_raw(p_w: &[f64], table: &[Vec<f64>]) -> f64 {
    let n_msgs = table[0].len();
    let mut p_x = vec![0.0; n_msgs];
    for (w, row) in table.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            p_x[j] += p_w[w] * p;
        }
    }
    let mut h = 0.0;
    for (w, row) in table.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            let joint = p_w[w] * p;
            if joint > 0.0 && p_x[j] > 0.0 {
                h -= joint * (joint / p_x[j]).log2();
            }
        }
    }
    h
}

/// Average logical information of the received symbols in bits:
/// sum over outputs of p(y) * (-log2 p_s(y)), with p_s(y) taken from the
/// output truth sets.
///
/// A received symbol with positive probability but zero logical probability
/// has undefined logical information and is a domain error; unreachable
/// symbols are skipped.
pub fn avg_received_logical_info(
    world: &FiniteWorld,
    strategy: &CodingStrategy,
    channel: &Channel,
) -> Result<f64> {
    check_strategy_world(world, strategy)?;
    check_strategy_channel(strategy, channel)?;
    let p_x = message_marginal(world, strategy.table());
    let p_y = output_marginal(&p_x, channel.table());
    let p_s = output_logical_probs(world, channel)?;
    avg_received_raw(&p_y, &p_s, channel)
}

/// Logical probability of each output symbol's truth set; also validates
/// the truth sets against the world.
fn output_logical_probs(world: &FiniteWorld, channel: &Channel) -> Result<Vec<f64>> {
    channel
        .output_semantics()
        .iter()
        .map(|msg| logical_probability(world, msg))
        .collect()
}

fn avg_received_raw(p_y: &[f64], p_s: &[f64], channel: &Channel) -> Result<f64> {
    let mut bits = 0.0;
    for (k, (&py, &ps)) in p_y.iter().zip(p_s.iter()).enumerate() {
        if py <= 0.0 {
            continue;
        }
        if ps <= 0.0 {
            return Err(Error::Domain(format!(
                "output_semantics: received symbol '{}' has probability {py} but zero logical probability",
                channel.output_semantics().get(k).expect("index in range").id()
            )));
        }
        bits += py * (-ps.log2());
    }
    Ok(bits)
}

/// The three objective terms for a given strategy.
pub fn capacity_terms(
    world: &FiniteWorld,
    strategy: &CodingStrategy,
    channel: &Channel,
) -> Result<CapacityTerms> {
    Ok(CapacityTerms {
        mutual_information: mutual_information(world, strategy, channel)?,
        ambiguity: ambiguity(world, strategy)?,
        avg_received_logical_info: avg_received_logical_info(world, strategy, channel)?,
    })
}

/// The semantic objective I(X;Y) - H(W|X) + Hbar_s(Y) in bits. May be
/// negative.
pub fn capacity_objective(
    world: &FiniteWorld,
    strategy: &CodingStrategy,
    channel: &Channel,
) -> Result<f64> {
    let t = capacity_terms(world, strategy, channel)?;
    Ok(t.mutual_information - t.ambiguity + t.avg_received_logical_info)
}

/// Euclidean projection of `v` onto the probability simplex.
fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut threshold = 0.0;
    for (i, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let t = (cumulative - 1.0) / (i as f64 + 1.0);
        if u - t > 0.0 {
            threshold = t;
        }
    }
    v.iter().map(|&x| (x - threshold).max(0.0)).collect()
}

/// Objective evaluation tolerant of slightly perturbed tables (entries are
/// clamped at zero) so central differences stay defined at the simplex
/// boundary.
struct LenientObjective<'a> {
    p_w: &'a [f64],
    channel_table: &'a [Vec<f64>],
    output_p_s: &'a [f64],
}

impl LenientObjective<'_> {
    fn eval(&self, table: &[Vec<f64>]) -> f64 {
        let n_msgs = table[0].len();
        let mut p_x = vec![0.0; n_msgs];
        for (w, row) in table.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                p_x[j] += self.p_w[w] * p.max(0.0);
            }
        }
        let mi = mutual_information_raw(&p_x, self.channel_table);
        let mut amb = 0.0;
        {
            for (w, row) in table.iter().enumerate() {
                for (j, &p) in row.iter().enumerate() {
                    let joint = self.p_w[w] * p.max(0.0);
                    if joint > 0.0 && p_x[j] > 0.0 {
                        amb -= joint * (joint / p_x[j]).log2();
                    }
                }
            }
        }
        let p_y = output_marginal(&p_x, self.channel_table);
        let mut recv = 0.0;
        for (k, &py) in p_y.iter().enumerate() {
            if py > 0.0 {
                recv += py * (-self.output_p_s[k].log2());
            }
        }
        mi - amb + recv
    }
}

/// Monotone projected-gradient ascent from one starting table. Returns the
/// final table and its lenient objective value.
fn ascend(
    obj: &LenientObjective<'_>,
    mut table: Vec<Vec<f64>>,
    max_iters: usize,
) -> (Vec<Vec<f64>>, f64) {
    let n_worlds = table.len();
    let n_msgs = table[0].len();
    let mut value = obj.eval(&table);
    let mut step = 0.25;
    let mut streak = 0;
    for _ in 0..max_iters {
        // central-difference gradient
        let mut grad = vec![vec![0.0; n_msgs]; n_worlds];
        for w in 0..n_worlds {
            for j in 0..n_msgs {
                let orig = table[w][j];
                table[w][j] = orig + GRAD_STEP;
                let up = obj.eval(&table);
                table[w][j] = orig - GRAD_STEP;
                let down = obj.eval(&table);
                table[w][j] = orig;
                grad[w][j] = (up - down) / (2.0 * GRAD_STEP);
            }
        }
        // backtracking: shrink the step until the projected point improves
        let mut improved = None;
        while step > 1e-12 {
            let candidate: Vec<Vec<f64>> = table
                .iter()
                .zip(grad.iter())
                .map(|(row, grow)| {
                    let moved: Vec<f64> = row
                        .iter()
                        .zip(grow.iter())
                        .map(|(&x, &g)| x + step * g)
                        .collect();
                    project_to_simplex(&moved)
                })
                .collect();
            let cand_value = obj.eval(&candidate);
            if cand_value > value {
                improved = Some((candidate, cand_value));
                break;
            }
            step *= 0.5;
        }
        let Some((candidate, cand_value)) = improved else {
            break; // no ascent direction at the smallest step
        };
        let improvement = cand_value - value;
        table = candidate;
        value = cand_value;
        step = (step * 2.0).min(1.0);
        if improvement < CONVERGENCE_EPS {
            streak += 1;
            if streak >= CONVERGENCE_STREAK {
                break;
            }
        } else {
            streak = 0;
        }
    }
    (table, value)
}

fn lex_less(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (&xa, &xb) in ra.iter().zip(rb.iter()) {
            match xa.total_cmp(&xb) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    false
}

/// Searches for the best coding strategy by multi-start projected gradient
/// ascent: `cfg.restarts` random starts (uniform over each row simplex)
/// plus every deterministic strategy when there are at most 4096 of them.
///
/// Starts are merged by a deterministic max with lexicographic tie-breaking
/// on the strategy table, so the result does not depend on evaluation
/// order. The returned value is the best found, not a certified supremum.
pub fn optimize_capacity(
    world: &FiniteWorld,
    channel: &Channel,
    cfg: &OptimizerConfig,
) -> Result<CapacityResult> {
    let n_worlds = world.len();
    let n_msgs = channel.n_inputs();
    if n_worlds > cfg.max_worlds {
        return Err(Error::Capability(format!(
            "world: {n_worlds} states exceed the configured maximum of {}",
            cfg.max_worlds
        )));
    }
    if n_msgs > cfg.max_messages {
        return Err(Error::Capability(format!(
            "channel: {n_msgs} input messages exceed the configured maximum of {}",
            cfg.max_messages
        )));
    }

    let output_p_s = output_logical_probs(world, channel)?;
    for (k, &ps) in output_p_s.iter().enumerate() {
        let reachable = channel.table().iter().any(|row| row[k] > 0.0);
        if ps <= 0.0 && reachable {
            return Err(Error::Domain(format!(
                "output_semantics: symbol '{}' is reachable but has zero logical probability",
                channel
                    .output_semantics()
                    .get(k)
                    .expect("index in range")
                    .id()
            )));
        }
    }
    let objective = LenientObjective {
        p_w: world.probs(),
        channel_table: channel.table(),
        output_p_s: &output_p_s,
    };

    // start list: deterministic strategies (when enumerable) + random rows
    let mut starts: Vec<Vec<Vec<f64>>> = Vec::new();
    let deterministic_count = (n_msgs as f64).powi(n_worlds as i32);
    if deterministic_count <= DETERMINISTIC_ENUM_CAP as f64 {
        let total = n_msgs.pow(n_worlds as u32);
        for code in 0..total {
            let mut table = vec![vec![0.0; n_msgs]; n_worlds];
            let mut rem = code;
            for row in table.iter_mut() {
                row[rem % n_msgs] = 1.0;
                rem /= n_msgs;
            }
            starts.push(table);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.restarts {
        let table: Vec<Vec<f64>> = (0..n_worlds)
            .map(|_| {
                // Dirichlet(1): exponential draws normalized
                let raw: Vec<f64> = (0..n_msgs)
                    .map(|_| -(1.0 - rng.random::<f64>()).ln())
                    .collect();
                let sum: f64 = raw.iter().sum();
                if sum > 0.0 {
                    raw.iter().map(|&e| e / sum).collect()
                } else {
                    vec![1.0 / n_msgs as f64; n_msgs]
                }
            })
            .collect();
        starts.push(table);
    }

    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for start in starts {
        let (table, value) = ascend(&objective, start, cfg.max_iters);
        best = match best {
            None => Some((value, table)),
            Some((bv, bt)) => {
                if value > bv || (value == bv && lex_less(&table, &bt)) {
                    Some((value, table))
                } else {
                    Some((bv, bt))
                }
            }
        };
    }
    let (_, table) = best.expect("at least the random starts exist");

    let strategy = CodingStrategy::new(table.iter().map(|row| project_to_simplex(row)).collect())?;
    let terms = capacity_terms(world, &strategy, channel)?;
    Ok(CapacityResult {
        value: terms.mutual_information - terms.ambiguity + terms.avg_received_logical_info,
        strategy,
        terms,
    })
}

/// Classical channel capacity max_{p(x)} I(X;Y) in bits via Blahut-Arimoto.
///
/// Stops when successive capacity estimates differ by less than 1e-9 bits
/// or after `cfg.max_iters` iterations.
pub fn shannon_capacity(channel: &Channel, cfg: &OptimizerConfig) -> Result<f64> {
    let n_in = channel.n_inputs();
    let n_out = channel.n_outputs();
    let table = channel.table();
    let mut input = vec![1.0 / n_in as f64; n_in];
    let mut previous = f64::NEG_INFINITY;
    let mut capacity = 0.0;
    for _ in 0..cfg.max_iters.max(1) {
        let mut q = vec![0.0; n_out];
        for (j, &r) in input.iter().enumerate() {
            for (k, &p) in table[j].iter().enumerate() {
                q[k] += r * p;
            }
        }
        // per-input KL divergence to the output marginal, in nats
        let divergence: Vec<f64> = table
            .iter()
            .map(|row| {
                row.iter()
                    .zip(q.iter())
                    .filter(|(&p, _)| p > 0.0)
                    .map(|(&p, &qk)| p * (p / qk).ln())
                    .sum::<f64>()
            })
            .collect();
        let z: f64 = input
            .iter()
            .zip(divergence.iter())
            .map(|(&r, &d)| r * d.exp())
            .sum();
        capacity = z.ln() / std::f64::consts::LN_2;
        for (r, &d) in input.iter_mut().zip(divergence.iter()) {
            *r *= d.exp() / z;
        }
        if (capacity - previous).abs() < BA_TOLERANCE {
            break;
        }
        previous = capacity;
    }
    Ok(capacity.max(0.0))
}
