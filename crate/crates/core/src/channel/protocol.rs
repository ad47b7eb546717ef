use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::knowledge::{AlgorithmKind, KnowledgeEntry, KnowledgeStore};
use super::model::ChannelTrace;
use super::predictor::{choose_yield_from, Predictor, PredictorKind, YieldChoice};
use super::ChannelError;
use crate::fitness::{self, FitOutcome, FitVariant, ShootingKind, ShootingRecord, SupplyValue};

pub const DEFAULT_EPOCHS_PER_REVIEW: usize = 50;
pub const DEFAULT_BURSTINESS_THRESHOLD: f64 = 0.5;
pub const DEFAULT_TARGET_RISK: f64 = 0.01;
/// Window used for identity checks by protocols without review epochs.
pub const DEFAULT_JITTER_WINDOW: usize = 50;
/// Signature under which interleaving lessons are stored.
pub const BURSTY_SIGNATURE: &str = "bursty-high";
const FLOOR_WINDOW: usize = 8;
const MAX_COPIES: u32 = 16;

/// What the application needs in order to stay itself.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdentityProfile {
    /// Real-time traffic: jitter above the bound breaks the service.
    Teleconferencing { jitter_bound: f64 },
    /// Bulk traffic: only delivery matters.
    #[default]
    FileTransfer,
}

fn default_epochs() -> usize {
    DEFAULT_EPOCHS_PER_REVIEW
}

fn default_threshold() -> f64 {
    DEFAULT_BURSTINESS_THRESHOLD
}

fn default_risk() -> f64 {
    DEFAULT_TARGET_RISK
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProtocolKind {
    /// Fixed redundancy, chosen once.
    Elastic { yield_point: u32 },
    /// Redundancy tracks a prediction of the channel.
    Entelechial {
        #[serde(default)]
        predictor: PredictorKind,
        epsilon: f64,
    },
    /// Entelechial, plus periodic self-review that may switch the
    /// transmission algorithm to interleaving and remember the switch.
    Antifragile {
        #[serde(default)]
        predictor: PredictorKind,
        epsilon: f64,
        #[serde(default = "default_epochs")]
        epochs_per_review: usize,
        #[serde(default = "default_threshold")]
        burstiness_threshold: f64,
        /// Acceptable probability that every interleaved copy meets a burst.
        #[serde(default = "default_risk")]
        target_risk: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    #[serde(flatten)]
    pub kind: ProtocolKind,
    #[serde(default)]
    pub identity_profile: IdentityProfile,
}

impl ProtocolConfig {
    pub fn elastic(yield_point: u32) -> Self {
        ProtocolConfig {
            kind: ProtocolKind::Elastic { yield_point },
            identity_profile: IdentityProfile::FileTransfer,
        }
    }

    pub fn entelechial(predictor: PredictorKind, epsilon: f64) -> Self {
        ProtocolConfig {
            kind: ProtocolKind::Entelechial { predictor, epsilon },
            identity_profile: IdentityProfile::FileTransfer,
        }
    }

    pub fn antifragile(predictor: PredictorKind, epsilon: f64, profile: IdentityProfile) -> Self {
        ProtocolConfig {
            kind: ProtocolKind::Antifragile {
                predictor,
                epsilon,
                epochs_per_review: DEFAULT_EPOCHS_PER_REVIEW,
                burstiness_threshold: DEFAULT_BURSTINESS_THRESHOLD,
                target_risk: DEFAULT_TARGET_RISK,
            },
            identity_profile: profile,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ProtocolKind::Elastic { .. } => "elastic",
            ProtocolKind::Entelechial { .. } => "entelechial",
            ProtocolKind::Antifragile { .. } => "antifragile",
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let bad = |msg: String| Err(ChannelError::InvalidConfig(msg));
        match self.kind {
            ProtocolKind::Elastic { yield_point: 0 } => {
                return bad("elastic yield_point must be positive".into())
            }
            ProtocolKind::Elastic { .. } => {}
            ProtocolKind::Entelechial { predictor, epsilon } => {
                predictor.validate()?;
                if epsilon.is_nan() || epsilon <= 0.0 {
                    return bad(format!("epsilon must be positive, got {epsilon}"));
                }
            }
            ProtocolKind::Antifragile {
                predictor,
                epsilon,
                epochs_per_review,
                burstiness_threshold,
                target_risk,
            } => {
                predictor.validate()?;
                if epsilon.is_nan() || epsilon <= 0.0 {
                    return bad(format!("epsilon must be positive, got {epsilon}"));
                }
                if epochs_per_review == 0 {
                    return bad("epochs_per_review must be positive".into());
                }
                if !(0.0..=1.0).contains(&burstiness_threshold) {
                    return bad(format!(
                        "burstiness_threshold {burstiness_threshold} outside [0,1]"
                    ));
                }
                if !(target_risk > 0.0 && target_risk < 1.0) {
                    return bad(format!("target_risk {target_risk} outside (0,1)"));
                }
            }
        }
        if let IdentityProfile::Teleconferencing { jitter_bound } = self.identity_profile {
            if jitter_bound.is_nan() || jitter_bound < 0.0 {
                return bad(format!(
                    "jitter_bound must be non-negative, got {jitter_bound}"
                ));
            }
        }
        Ok(())
    }

    fn jitter_window(&self) -> usize {
        match self.kind {
            ProtocolKind::Antifragile {
                epochs_per_review, ..
            } => epochs_per_review,
            _ => DEFAULT_JITTER_WINDOW,
        }
    }
}

/// Transmission algorithm in force at a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Algorithm {
    /// All copies of a packet go out in the same step.
    Repetition,
    /// Copy `i` of the packet created at `t` goes out at `t + i·depth`.
    /// `copies` is the floor on the number of copies.
    Interleaved { depth: u32, copies: u32 },
}

impl Algorithm {
    pub fn kind(self) -> AlgorithmKind {
        match self {
            Algorithm::Repetition => AlgorithmKind::Repetition,
            Algorithm::Interleaved { .. } => AlgorithmKind::Interleaved,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Repetition => f.write_str("repetition"),
            Algorithm::Interleaved { depth, .. } => write!(f, "interleaved:{depth}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u64,
    pub y: u32,
    /// Requirement the packet actually faced: `y` for repetition, the
    /// smallest requirement among its copy steps when interleaved.
    pub y_effective: u32,
    pub yield_point: u32,
    pub predicted: Option<f64>,
    pub margin_warning: bool,
    pub delivered: bool,
    pub delivered_at: Option<u64>,
    pub shooting: ShootingRecord,
    pub cost: u64,
    pub algorithm: Algorithm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mutation {
    pub t: u64,
    pub epoch: u64,
    pub from: Algorithm,
    pub to: Algorithm,
    /// Whether the target algorithm came from the knowledge store.
    pub recalled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    /// Steps at which the provisioned point failed to exceed `y(t)`.
    pub undershoot_count: u64,
    pub cumulative_overshoot: f64,
    pub total_cost: u64,
    pub delivered_fraction: f64,
    /// Standard deviation of inter-delivery gaps, in steps.
    pub jitter: f64,
    pub identity_violations: u64,
    pub mutations: Vec<Mutation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRun {
    pub protocol: String,
    pub config: ProtocolConfig,
    /// Yielding point used at t=0, before the predictor has any history.
    pub bootstrap_yield: Option<u32>,
    pub records: Vec<StepRecord>,
    pub summary: RunSummary,
}

impl ProtocolRun {
    pub fn trace_values(&self) -> Vec<u32> {
        self.records.iter().map(|r| r.y).collect()
    }

    pub fn mutated(&self) -> bool {
        !self.summary.mutations.is_empty()
    }

    /// Mean per-step fit over each review epoch lying entirely inside
    /// `segment`, with supply `Y − y`. Identity loss counts as zero fit.
    pub fn epoch_fits(&self, segment: std::ops::Range<usize>, epoch_len: usize) -> Vec<f64> {
        let first = segment.start.div_ceil(epoch_len);
        let mut out = Vec::new();
        let mut k = first;
        while (k + 1) * epoch_len <= segment.end && (k + 1) * epoch_len <= self.records.len() {
            let span = &self.records[k * epoch_len..(k + 1) * epoch_len];
            let total: f64 = span
                .iter()
                .map(|r| {
                    let s = SupplyValue(i64::from(r.yield_point) - i64::from(r.y));
                    match fitness::fit(s, FitVariant::Baseline) {
                        FitOutcome::Fit(v) => v,
                        FitOutcome::IdentityLoss => 0.0,
                    }
                })
                .sum();
            out.push(total / epoch_len as f64);
            k += 1;
        }
        out
    }

    pub fn epochs_per_review(&self) -> Option<usize> {
        match self.config.kind {
            ProtocolKind::Antifragile {
                epochs_per_review, ..
            } => Some(epochs_per_review),
            _ => None,
        }
    }
}

/// Channel statistics observed over one review epoch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BurstinessEstimate {
    /// Fraction of stressed steps that belong to runs of two or more.
    pub burstiness: f64,
    pub mean_run: f64,
    pub stressed: usize,
}

/// A step is stressed when its requirement exceeds `baseline`.
pub fn estimate_burstiness(window: &[u32], baseline: u32) -> BurstinessEstimate {
    let mut runs = Vec::new();
    let mut current = 0usize;
    for &y in window {
        if y > baseline {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    let stressed: usize = runs.iter().sum();
    if stressed == 0 {
        return BurstinessEstimate {
            burstiness: 0.0,
            mean_run: 0.0,
            stressed: 0,
        };
    }
    let in_bursts: usize = runs.iter().filter(|r| **r >= 2).sum();
    BurstinessEstimate {
        burstiness: in_bursts as f64 / stressed as f64,
        mean_run: stressed as f64 / runs.len() as f64,
        stressed,
    }
}

/// Interleaving depth long enough to step over a typical burst twice.
pub fn depth_for_mean_run(mean_run: f64) -> u32 {
    ((2.0 * mean_run).ceil() as u32).max(2)
}

/// Fewest copies whose joint exposure to bursts stays under `target_risk`,
/// treating copies `depth` apart as independent draws.
pub fn copies_for_risk(stressed_fraction: f64, target_risk: f64) -> u32 {
    let mut k = 2;
    while k < MAX_COPIES && stressed_fraction.powi(k as i32) > target_risk {
        k += 1;
    }
    k
}

struct Step {
    yield_point: u32,
    choice: Option<YieldChoice>,
    algorithm: Algorithm,
}

fn record_step(trace: &ChannelTrace, t: usize, step: Step) -> StepRecord {
    let y = trace.values[t];
    let last = trace.len() - 1;
    let (y_effective, delivered_at) = match step.algorithm {
        Algorithm::Repetition => (y, (step.yield_point > y).then_some(t as u64)),
        Algorithm::Interleaved { depth, .. } => {
            // beyond the horizon the channel holds its last value
            let copy_step = |i: u32| t + (i * depth) as usize;
            let y_at = |i: u32| trace.values[copy_step(i).min(last)];
            let eff = (0..step.yield_point).map(y_at).min().unwrap_or(y);
            let at = (0..step.yield_point)
                .find(|&i| step.yield_point > y_at(i))
                .map(|i| copy_step(i) as u64);
            (eff, at)
        }
    };
    StepRecord {
        t: t as u64,
        y,
        y_effective,
        yield_point: step.yield_point,
        predicted: step.choice.map(|c| c.predicted),
        margin_warning: step.choice.is_some_and(|c| c.margin_warning),
        delivered: delivered_at.is_some(),
        delivered_at,
        shooting: fitness::shooting(f64::from(y), f64::from(step.yield_point), t as u64),
        cost: u64::from(step.yield_point),
        algorithm: step.algorithm,
    }
}

fn std_dev(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// Jitter of the packets created in `records`, in creation order.
pub fn jitter(records: &[StepRecord]) -> f64 {
    let times: Vec<f64> = records
        .iter()
        .filter_map(|r| r.delivered_at)
        .map(|t| t as f64)
        .collect();
    let gaps: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    std_dev(&gaps)
}

fn summarize(
    config: &ProtocolConfig,
    records: &[StepRecord],
    mutations: Vec<Mutation>,
) -> RunSummary {
    let undershoot_count = records.iter().filter(|r| r.yield_point <= r.y).count() as u64;
    let overshoots: Vec<ShootingRecord> = records
        .iter()
        .map(|r| r.shooting)
        .filter(|s| s.kind != ShootingKind::Undershoot)
        .collect();
    let cumulative_overshoot =
        fitness::cumulative_overshoot(&overshoots, 1.0).expect("undershoots filtered out");
    let delivered = records.iter().filter(|r| r.delivered).count();
    let identity_violations = match config.identity_profile {
        IdentityProfile::FileTransfer => 0,
        IdentityProfile::Teleconferencing { jitter_bound } => records
            .chunks(config.jitter_window())
            .filter(|w| jitter(w) > jitter_bound)
            .count() as u64,
    };
    RunSummary {
        undershoot_count,
        cumulative_overshoot,
        total_cost: records.iter().map(|r| r.cost).sum(),
        delivered_fraction: if records.is_empty() {
            0.0
        } else {
            delivered as f64 / records.len() as f64
        },
        jitter: jitter(records),
        identity_violations,
        mutations,
    }
}

fn finish(
    config: ProtocolConfig,
    bootstrap_yield: Option<u32>,
    records: Vec<StepRecord>,
    mutations: Vec<Mutation>,
) -> ProtocolRun {
    let summary = summarize(&config, &records, mutations);
    ProtocolRun {
        protocol: config.name().to_string(),
        config,
        bootstrap_yield,
        records,
        summary,
    }
}

fn check_trace(trace: &ChannelTrace) -> Result<(), ChannelError> {
    if trace.is_empty() {
        return Err(ChannelError::InvalidConfig("channel trace is empty".into()));
    }
    Ok(())
}

/// Fixed yielding point for the whole run.
pub fn run_elastic(trace: &ChannelTrace, yield_point: u32) -> Result<ProtocolRun, ChannelError> {
    let config = ProtocolConfig::elastic(yield_point);
    config.validate()?;
    check_trace(trace)?;
    let records = (0..trace.len())
        .map(|t| {
            record_step(
                trace,
                t,
                Step {
                    yield_point,
                    choice: None,
                    algorithm: Algorithm::Repetition,
                },
            )
        })
        .collect();
    Ok(finish(config, None, records, Vec::new()))
}

fn run_predictive(
    trace: &ChannelTrace,
    config: ProtocolConfig,
    predictor_kind: PredictorKind,
    epsilon: f64,
) -> Result<ProtocolRun, ChannelError> {
    let mut predictor = Predictor::new(predictor_kind);
    let bootstrap = trace.values[0] + 1;
    let mut records = Vec::with_capacity(trace.len());
    for t in 0..trace.len() {
        let step = if t == 0 {
            Step {
                yield_point: bootstrap,
                choice: None,
                algorithm: Algorithm::Repetition,
            }
        } else {
            let choice = choose_yield_from(&predictor, epsilon)?;
            Step {
                yield_point: choice.yield_point,
                choice: Some(choice),
                algorithm: Algorithm::Repetition,
            }
        };
        records.push(record_step(trace, t, step));
        predictor.observe(trace.values[t]);
    }
    Ok(finish(config, Some(bootstrap), records, Vec::new()))
}

/// Yielding point re-chosen every step from a prediction of the channel.
pub fn run_entelechial(
    trace: &ChannelTrace,
    predictor: PredictorKind,
    epsilon: f64,
) -> Result<ProtocolRun, ChannelError> {
    let config = ProtocolConfig::entelechial(predictor, epsilon);
    config.validate()?;
    check_trace(trace)?;
    run_predictive(trace, config, predictor, epsilon)
}

/// Runs the antifragile protocol, reading and extending `store`.
pub fn run_antifragile(
    trace: &ChannelTrace,
    config: &ProtocolConfig,
    store: &mut KnowledgeStore,
) -> Result<ProtocolRun, ChannelError> {
    config.validate()?;
    check_trace(trace)?;
    let ProtocolKind::Antifragile {
        predictor: predictor_kind,
        epsilon,
        epochs_per_review,
        burstiness_threshold,
        target_risk,
    } = config.kind
    else {
        return Err(ChannelError::InvalidConfig(format!(
            "expected an antifragile protocol, got {}",
            config.name()
        )));
    };

    let mut predictor = Predictor::new(predictor_kind);
    let floor_window = match predictor_kind {
        PredictorKind::WindowMax { window } => window,
        PredictorKind::EwmaPlusSlope { .. } => FLOOR_WINDOW,
    };
    let mut recent: VecDeque<u32> = VecDeque::with_capacity(floor_window);
    let bootstrap = trace.values[0] + 1;
    let mut algorithm = Algorithm::Repetition;
    let mut recalled = false;
    let mut mutations = Vec::new();
    let mut records = Vec::with_capacity(trace.len());

    for t in 0..trace.len() {
        if t > 0 && t % epochs_per_review == 0 {
            let epoch = (t / epochs_per_review) as u64;
            let seen = &trace.values[..t];
            let baseline = *seen.iter().min().expect("non-empty history");
            let stressed = seen.iter().filter(|y| **y > baseline).count() as f64 / t as f64;
            let estimate = copies_for_risk(stressed, target_risk);
            match algorithm {
                Algorithm::Repetition => {
                    let est =
                        estimate_burstiness(&trace.values[t - epochs_per_review..t], baseline);
                    if est.burstiness > burstiness_threshold {
                        let (depth, copies) = match store.lookup(BURSTY_SIGNATURE) {
                            Some(KnowledgeEntry {
                                depth: Some(d),
                                copies,
                                ..
                            }) => {
                                recalled = true;
                                (*d, copies.unwrap_or(estimate))
                            }
                            _ => {
                                let d = depth_for_mean_run(est.mean_run);
                                store.learn(KnowledgeEntry {
                                    signature: BURSTY_SIGNATURE.to_string(),
                                    algorithm: AlgorithmKind::Interleaved,
                                    depth: Some(d),
                                    copies: Some(estimate),
                                    epoch_learned: epoch,
                                });
                                (d, estimate)
                            }
                        };
                        let to = Algorithm::Interleaved { depth, copies };
                        mutations.push(Mutation {
                            t: t as u64,
                            epoch,
                            from: algorithm,
                            to,
                            recalled,
                        });
                        algorithm = to;
                    }
                }
                // a recalled lesson is applied as stored; a fresh one keeps
                // being refined, but the running copy count only ever drops
                Algorithm::Interleaved { depth, copies } if !recalled => {
                    store.refine(BURSTY_SIGNATURE, estimate);
                    if estimate < copies {
                        algorithm = Algorithm::Interleaved {
                            depth,
                            copies: estimate,
                        };
                    }
                }
                Algorithm::Interleaved { .. } => {}
            }
        }

        let step = if t == 0 {
            Step {
                yield_point: bootstrap,
                choice: None,
                algorithm,
            }
        } else {
            match algorithm {
                Algorithm::Repetition => {
                    let choice = choose_yield_from(&predictor, epsilon)?;
                    Step {
                        yield_point: choice.yield_point,
                        choice: Some(choice),
                        algorithm,
                    }
                }
                Algorithm::Interleaved { copies, .. } => {
                    // spread copies never cost more than repetition would
                    let choice = choose_yield_from(&predictor, epsilon)?;
                    let floor = recent.iter().min().copied().unwrap_or(trace.values[0]);
                    let yield_point = copies.min(choice.yield_point).max(floor + 1);
                    Step {
                        yield_point,
                        choice: None,
                        algorithm,
                    }
                }
            }
        };
        records.push(record_step(trace, t, step));
        let y = trace.values[t];
        predictor.observe(y);
        if recent.len() == floor_window {
            recent.pop_front();
        }
        recent.push_back(y);
    }

    Ok(finish(*config, Some(bootstrap), records, mutations))
}

/// Runs any protocol. Non-antifragile protocols leave `store` untouched.
pub fn simulate(
    trace: &ChannelTrace,
    config: &ProtocolConfig,
    store: &mut KnowledgeStore,
) -> Result<ProtocolRun, ChannelError> {
    config.validate()?;
    check_trace(trace)?;
    match config.kind {
        ProtocolKind::Elastic { yield_point } => {
            let mut run = run_elastic(trace, yield_point)?;
            run.config = *config;
            run.summary = summarize(config, &run.records, Vec::new());
            Ok(run)
        }
        ProtocolKind::Entelechial { predictor, epsilon } => {
            run_predictive(trace, *config, predictor, epsilon)
        }
        ProtocolKind::Antifragile { .. } => run_antifragile(trace, config, store),
    }
}
