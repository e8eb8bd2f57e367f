//! Command-line front end: one subcommand per operation, JSON/CSV output,
//! explicit seeds, deterministic results.

mod files;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use semcog::capacity::{optimize_capacity, shannon_capacity, OptimizerConfig, DEFAULT_SEED};
use semcog::cognition::{cognitive_curve, cognitive_entropy, AccuracyProfile};
use semcog::compression::{decompose_loss, CompressionSpec, LossDecomposition};
use semcog::sampling::{crlb, min_measurements, monte_carlo_crlb, Estimator};
use semcog::world::{
    fuzzy_semantic_entropy, logical_probability, semantic_entropy, semantic_information,
};

use output::{deliver, fmt12, OutputArgs, RunManifest};

/// Errors split by exit code: validation problems exit 2, internal
/// failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Internal(String),
}

impl From<semcog::Error> for CliError {
    fn from(err: semcog::Error) -> Self {
        match err {
            semcog::Error::Numerical(_) => CliError::Internal(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "semcog",
    version,
    about = "Semantic information measures, channel-capacity search, and sampling simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semantic entropy of the message set in a world file
    Entropy {
        /// World specification file (states, probs, messages)
        #[arg(long)]
        world: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fuzzy semantic entropy of the fuzzy concept in a world file
    FuzzyEntropy {
        #[arg(long)]
        world: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search for the best semantic coding strategy on a world + channel
    Capacity {
        #[arg(long)]
        world: PathBuf,
        /// Channel specification file (table, output_semantics)
        #[arg(long)]
        channel: PathBuf,
        /// Random restarts for the gradient ascent
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classical Shannon capacity of a channel (Blahut-Arimoto)
    Shannon {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Split an information loss into intended and lossy parts
    Compression {
        /// Source entropy H(W) in bits
        #[arg(long = "h-w")]
        h_w: f64,
        /// Encoded entropy H(X) in bits
        #[arg(long = "h-x")]
        h_x: f64,
        /// Entropy of the most concise task-sufficient meaning, in bits
        #[arg(long = "h-zbar")]
        h_zbar: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cognitive entropy of a message set under a per-message accuracy map
    Cognition {
        #[arg(long)]
        world: PathBuf,
        /// JSON map from message id to accuracy in [0, 1]
        #[arg(long)]
        accuracy: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cognitive information sampled over the accuracy range [0, 1]
    Curve {
        /// Semantic information of the message in bits
        #[arg(long = "h-s")]
        h_s: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Minimum measurement count meeting a target estimation error
    Plan {
        /// Sparsity K
        #[arg(long)]
        k: usize,
        /// Average linear SNR over sources
        #[arg(long)]
        gamma: f64,
        /// Average linear large-scale gain over channels
        #[arg(long)]
        beta: f64,
        /// Target total estimation error
        #[arg(long)]
        eps: f64,
        /// Ambient dimension N
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded Monte-Carlo check of the estimation-error bound
    Simulate {
        #[arg(long = "scenario-file")]
        scenario_file: PathBuf,
        /// Measurement count M
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_enum, default_value = "genie")]
        estimator: EstimatorArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum EstimatorArg {
    Genie,
    Omp,
}

impl From<EstimatorArg> for Estimator {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::Genie => Estimator::Genie,
            EstimatorArg::Omp => Estimator::Omp,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[derive(Serialize)]
struct MessageReport {
    id: String,
    logical_probability: f64,
    semantic_information_bits: f64,
}

#[derive(Serialize)]
struct EntropyReport {
    semantic_entropy_bits: f64,
    messages: Vec<MessageReport>,
}

#[derive(Serialize)]
struct FuzzyReport {
    fuzzy_semantic_entropy_bits: f64,
    matching_degrees: Vec<f64>,
}

#[derive(Serialize)]
struct CapacityReport {
    value_bits: f64,
    terms: semcog::capacity::CapacityTerms,
    strategy: semcog::capacity::CodingStrategy,
}

#[derive(Serialize)]
struct ShannonReport {
    capacity_bits: f64,
}

#[derive(Serialize)]
struct CognitionReport {
    cognitive_entropy_bits: f64,
    semantic_entropy_bits: f64,
}

#[derive(Serialize)]
struct CurvePoint {
    accuracy: f64,
    cognitive_information_bits: f64,
}

#[derive(Serialize)]
struct CurveReport {
    h_s_bits: f64,
    points: Vec<CurvePoint>,
}

#[derive(Serialize)]
struct PlanReport {
    m: usize,
    crlb_at_m: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    m: usize,
    trials: usize,
    estimator: Estimator,
    empirical_mse: f64,
    crlb: f64,
    ratio: f64,
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Entropy { world, out } => {
            let (w, messages, _) = files::load_world(&world)?;
            let msgs = messages.ok_or_else(|| {
                CliError::Validation(format!(
                    "'{}': messages: world file declares no messages",
                    world.display()
                ))
            })?;
            let mut reports = Vec::new();
            for msg in msgs.iter() {
                reports.push(MessageReport {
                    id: msg.id().to_string(),
                    logical_probability: logical_probability(&w, msg)?,
                    semantic_information_bits: semantic_information(&w, msg)?,
                });
            }
            let result = EntropyReport {
                semantic_entropy_bits: semantic_entropy(&w, &msgs)?,
                messages: reports,
            };
            let manifest = RunManifest::new("entropy", DEFAULT_SEED)
                .input(&world)
                .flag("world", world.display());
            let rows: Vec<Vec<String>> = result
                .messages
                .iter()
                .map(|m| {
                    vec![
                        m.id.clone(),
                        fmt12(m.logical_probability),
                        fmt12(m.semantic_information_bits),
                    ]
                })
                .collect();
            deliver(
                &out,
                manifest,
                &result,
                &["id", "logical_probability", "semantic_information_bits"],
                &rows,
            )
        }
        Command::FuzzyEntropy { world, out } => {
            let (_, _, fuzzy) = files::load_world(&world)?;
            let concept = fuzzy.ok_or_else(|| {
                CliError::Validation(format!(
                    "'{}': fuzzy: world file declares no fuzzy section",
                    world.display()
                ))
            })?;
            let result = FuzzyReport {
                fuzzy_semantic_entropy_bits: fuzzy_semantic_entropy(&concept)?,
                matching_degrees: concept.matching_degrees()?,
            };
            let manifest = RunManifest::new("fuzzy-entropy", DEFAULT_SEED)
                .input(&world)
                .flag("world", world.display());
            let rows: Vec<Vec<String>> = result
                .matching_degrees
                .iter()
                .enumerate()
                .map(|(j, &d)| vec![j.to_string(), fmt12(d)])
                .collect();
            deliver(
                &out,
                manifest,
                &result,
                &["class_index", "matching_degree"],
                &rows,
            )
        }
        Command::Capacity {
            world,
            channel,
            restarts,
            max_iters,
            seed,
            out,
        } => {
            let (w, _, _) = files::load_world(&world)?;
            let ch = files::load_channel(&channel)?;
            let cfg = OptimizerConfig {
                restarts,
                max_iters,
                seed,
                ..OptimizerConfig::default()
            };
            let found = optimize_capacity(&w, &ch, &cfg)?;
            let result = CapacityReport {
                value_bits: found.value,
                terms: found.terms,
                strategy: found.strategy,
            };
            let manifest = RunManifest::new("capacity", seed)
                .input(&world)
                .input(&channel)
                .flag("world", world.display())
                .flag("channel", channel.display())
                .flag("restarts", restarts)
                .flag("max_iters", max_iters)
                .flag("seed", seed);
            let rows = vec![vec![
                fmt12(result.value_bits),
                fmt12(result.terms.mutual_information),
                fmt12(result.terms.ambiguity),
                fmt12(result.terms.avg_received_logical_info),
            ]];
            deliver(
                &out,
                manifest,
                &result,
                &[
                    "value_bits",
                    "mutual_information_bits",
                    "ambiguity_bits",
                    "avg_received_logical_info_bits",
                ],
                &rows,
            )
        }
        Command::Shannon {
            channel,
            max_iters,
            out,
        } => {
            let ch = files::load_channel(&channel)?;
            let cfg = OptimizerConfig {
                max_iters,
                ..OptimizerConfig::default()
            };
            let result = ShannonReport {
                capacity_bits: shannon_capacity(&ch, &cfg)?,
            };
            let manifest = RunManifest::new("shannon", DEFAULT_SEED)
                .input(&channel)
                .flag("channel", channel.display())
                .flag("max_iters", max_iters);
            let rows = vec![vec![fmt12(result.capacity_bits)]];
            deliver(&out, manifest, &result, &["capacity_bits"], &rows)
        }
        Command::Compression {
            h_w,
            h_x,
            h_zbar,
            out,
        } => {
            let spec = CompressionSpec::new(h_w, h_x, h_zbar)?;
            let result: LossDecomposition = decompose_loss(&spec);
            let manifest = RunManifest::new("compression", DEFAULT_SEED)
                .flag("h_w", h_w)
                .flag("h_x", h_x)
                .flag("h_zbar", h_zbar);
            let verdict = match result.verdict {
                semcog::compression::CompressionVerdict::Lossless => "lossless",
                semcog::compression::CompressionVerdict::Lossy => "lossy",
            };
            let rows = vec![vec![
                fmt12(result.total),
                fmt12(result.intended),
                fmt12(result.lossy),
                verdict.to_string(),
            ]];
            deliver(
                &out,
                manifest,
                &result,
                &["total_bits", "intended_bits", "lossy_bits", "verdict"],
                &rows,
            )
        }
        Command::Cognition {
            world,
            accuracy,
            out,
        } => {
            let (w, messages, _) = files::load_world(&world)?;
            let msgs = messages.ok_or_else(|| {
                CliError::Validation(format!(
                    "'{}': messages: world file declares no messages",
                    world.display()
                ))
            })?;
            let profile = AccuracyProfile::new(files::load_accuracies(&accuracy)?)?;
            let result = CognitionReport {
                cognitive_entropy_bits: cognitive_entropy(&w, &msgs, &profile)?,
                semantic_entropy_bits: semantic_entropy(&w, &msgs)?,
            };
            let manifest = RunManifest::new("cognition", DEFAULT_SEED)
                .input(&world)
                .input(&accuracy)
                .flag("world", world.display())
                .flag("accuracy", accuracy.display());
            let rows = vec![vec![
                fmt12(result.cognitive_entropy_bits),
                fmt12(result.semantic_entropy_bits),
            ]];
            deliver(
                &out,
                manifest,
                &result,
                &["cognitive_entropy_bits", "semantic_entropy_bits"],
                &rows,
            )
        }
        Command::Curve { h_s, points, out } => {
            let curve = cognitive_curve(h_s, points)?;
            let result = CurveReport {
                h_s_bits: h_s,
                points: curve
                    .iter()
                    .map(|&(accuracy, bits)| CurvePoint {
                        accuracy,
                        cognitive_information_bits: bits,
                    })
                    .collect(),
            };
            let manifest = RunManifest::new("curve", DEFAULT_SEED)
                .flag("h_s", h_s)
                .flag("points", points);
            let rows: Vec<Vec<String>> = curve
                .iter()
                .map(|&(accuracy, bits)| vec![fmt12(accuracy), fmt12(bits)])
                .collect();
            deliver(
                &out,
                manifest,
                &result,
                &["accuracy", "cognitive_information_bits"],
                &rows,
            )
        }
        Command::Plan {
            k,
            gamma,
            beta,
            eps,
            n,
            out,
        } => {
            let m = min_measurements(k, gamma, beta, eps, n)?;
            let result = PlanReport {
                m,
                crlb_at_m: crlb(k, m, gamma, beta)?,
            };
            let manifest = RunManifest::new("plan", DEFAULT_SEED)
                .flag("k", k)
                .flag("gamma", gamma)
                .flag("beta", beta)
                .flag("eps", eps)
                .flag("n", n);
            let rows = vec![vec![result.m.to_string(), fmt12(result.crlb_at_m)]];
            deliver(&out, manifest, &result, &["m", "crlb_at_m"], &rows)
        }
        Command::Simulate {
            scenario_file,
            m,
            trials,
            estimator,
            seed,
            out,
        } => {
            let scenario = files::load_scenario(&scenario_file)?;
            let report = monte_carlo_crlb(&scenario, m, trials, estimator.into(), seed)?;
            let result = SimulateReport {
                m,
                trials,
                estimator: estimator.into(),
                empirical_mse: report.empirical_mse,
                crlb: report.crlb,
                ratio: report.ratio,
            };
            let manifest = RunManifest::new("simulate", seed)
                .input(&scenario_file)
                .flag("scenario_file", scenario_file.display())
                .flag("m", m)
                .flag("trials", trials)
                .flag("estimator", format!("{:?}", estimator).to_lowercase())
                .flag("seed", seed);
            let rows: Vec<Vec<String>> = report
                .per_trial_squared_error
                .iter()
                .enumerate()
                .map(|(t, &err)| vec![t.to_string(), fmt12(err)])
                .collect();
            deliver(&out, manifest, &result, &["trial", "squared_error"], &rows)
        }
    }
}
