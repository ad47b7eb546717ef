//! Supply, system-environment fit, and over/undershoot accounting.

use std::fmt;
use std::io;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::behavior::{self, BehaviorDescriptor, BehaviorError};

#[derive(Debug, Error)]
pub enum FitnessError {
    #[error("behaviors are incommensurable; a social relationship should be considered")]
    IncommensurableBehaviors,
    #[error("shooting record at t={0} is an undershoot")]
    ContainsUndershoot(u64),
    #[error("system and environment traces have no common time range")]
    EmptyTraceOverlap,
    #[error("trace time steps must be strictly increasing (t={0} follows t={1})")]
    NonIncreasingTrace(u64, u64),
    #[error("invalid fit variant `{0}` (expected baseline, quadratic or plateau:W)")]
    InvalidVariant(String),
    #[error(transparent)]
    Behavior(#[from] BehaviorError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Which side of a system/environment pair is the more capable behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The environment's behavior precedes the system's.
    SystemDominates,
    /// The system's behavior precedes the environment's.
    EnvironmentDominates,
    Equal,
    Incommensurable,
}

/// Orients a pair of behaviors. When the raw order holds both ways (an
/// inclusion condition one way and the social condition the other), the
/// inclusion direction wins.
pub fn resolve_direction(system: &BehaviorDescriptor, env: &BehaviorDescriptor) -> Direction {
    if system == env {
        return Direction::Equal;
    }
    let env_below = behavior::precedes(env, system);
    let sys_below = behavior::precedes(system, env);
    match (env_below, sys_below) {
        (true, false) => Direction::SystemDominates,
        (false, true) => Direction::EnvironmentDominates,
        (false, false) => Direction::Incommensurable,
        (true, true) => {
            if behavior::precedes_by_inclusion(env, system) {
                Direction::SystemDominates
            } else {
                Direction::EnvironmentDominates
            }
        }
    }
}

/// Signed behavioral distance of a system from its environment.
/// Positive is oversupply, negative undersupply, zero perfect supply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SupplyValue(pub i64);

impl SupplyValue {
    pub fn value(self) -> i64 {
        self.0
    }
}

impl fmt::Display for SupplyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn supply(
    system: &BehaviorDescriptor,
    env: &BehaviorDescriptor,
) -> Result<SupplyValue, FitnessError> {
    let d = behavior::dist(system, env)? as i64;
    match resolve_direction(system, env) {
        Direction::Equal => Ok(SupplyValue(0)),
        Direction::SystemDominates => Ok(SupplyValue(d)),
        Direction::EnvironmentDominates => Ok(SupplyValue(-d)),
        Direction::Incommensurable => Err(FitnessError::IncommensurableBehaviors),
    }
}

/// System-environment fit. Undersupply is a loss of identity and is kept as
/// a tag rather than a floating-point infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitOutcome {
    Fit(f64),
    IdentityLoss,
}

impl FitOutcome {
    pub fn is_identity_loss(self) -> bool {
        matches!(self, FitOutcome::IdentityLoss)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            FitOutcome::Fit(v) => Some(v),
            FitOutcome::IdentityLoss => None,
        }
    }

    /// Fit as a float, with identity loss mapped to negative infinity.
    pub fn as_f64(self) -> f64 {
        self.value().unwrap_or(f64::NEG_INFINITY)
    }
}

impl fmt::Display for FitOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitOutcome::Fit(v) => write!(f, "{v}"),
            FitOutcome::IdentityLoss => f.write_str("-inf"),
        }
    }
}

impl Serialize for FitOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FitOutcome::Fit(v) => serializer.serialize_f64(*v),
            FitOutcome::IdentityLoss => serializer.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for FitOutcome {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Ok(FitOutcome::Fit(v)),
            Raw::Str(s) if s == "-inf" => Ok(FitOutcome::IdentityLoss),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "unexpected fit value `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitVariant {
    /// `1 / (1 + s)`
    #[default]
    Baseline,
    /// `1 / (1 + s²)`
    Quadratic,
    /// Perfect fit up to `width` units of oversupply, then baseline decay.
    Plateau(u64),
}

impl FromStr for FitVariant {
    type Err = FitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline" => Ok(FitVariant::Baseline),
            "quadratic" => Ok(FitVariant::Quadratic),
            _ => s
                .strip_prefix("plateau:")
                .and_then(|w| w.parse().ok())
                .map(FitVariant::Plateau)
                .ok_or_else(|| FitnessError::InvalidVariant(s.to_string())),
        }
    }
}

impl fmt::Display for FitVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitVariant::Baseline => f.write_str("baseline"),
            FitVariant::Quadratic => f.write_str("quadratic"),
            FitVariant::Plateau(w) => write!(f, "plateau:{w}"),
        }
    }
}

impl Serialize for FitVariant {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FitVariant {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn fit(s: SupplyValue, variant: FitVariant) -> FitOutcome {
    let s = s.0;
    if s < 0 {
        return FitOutcome::IdentityLoss;
    }
    let s = s as f64;
    match variant {
        FitVariant::Baseline => FitOutcome::Fit(1.0 / (1.0 + s)),
        FitVariant::Quadratic => FitOutcome::Fit(1.0 / (1.0 + s * s)),
        FitVariant::Plateau(w) => {
            let w = w as f64;
            if s <= w {
                FitOutcome::Fit(1.0)
            } else {
                FitOutcome::Fit(1.0 / (1.0 + (s - w)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShootingKind {
    Undershoot,
    Overshoot,
    Exact,
}

impl ShootingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ShootingKind::Undershoot => "undershoot",
            ShootingKind::Overshoot => "overshoot",
            ShootingKind::Exact => "exact",
        }
    }
}

/// Gap between the required yielding point `y` and the provisioned one at a step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingRecord {
    pub t: u64,
    pub kind: ShootingKind,
    pub magnitude: f64,
}

pub fn shooting(required: f64, provisioned: f64, t: u64) -> ShootingRecord {
    let (kind, magnitude) = if required > provisioned {
        (ShootingKind::Undershoot, required - provisioned)
    } else if provisioned > required {
        (ShootingKind::Overshoot, provisioned - required)
    } else {
        (ShootingKind::Exact, 0.0)
    };
    ShootingRecord { t, kind, magnitude }
}

/// Left-Riemann sum of overshoot over the records.
pub fn cumulative_overshoot(records: &[ShootingRecord], dt: f64) -> Result<f64, FitnessError> {
    let mut total = 0.0;
    for r in records {
        match r.kind {
            ShootingKind::Undershoot => return Err(FitnessError::ContainsUndershoot(r.t)),
            ShootingKind::Overshoot => total += r.magnitude * dt,
            ShootingKind::Exact => {}
        }
    }
    Ok(total)
}

/// Piecewise-constant behavior over time: each entry holds until the next.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "Vec<(u64, BehaviorDescriptor)>",
    into = "Vec<(u64, BehaviorDescriptor)>"
)]
pub struct TurbulenceTrace(Vec<(u64, BehaviorDescriptor)>);

impl TurbulenceTrace {
    pub fn new(points: Vec<(u64, BehaviorDescriptor)>) -> Result<Self, FitnessError> {
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(FitnessError::NonIncreasingTrace(w[1].0, w[0].0));
            }
        }
        Ok(TurbulenceTrace(points))
    }

    pub fn constant(t: u64, b: BehaviorDescriptor) -> Self {
        TurbulenceTrace(vec![(t, b)])
    }

    pub fn points(&self) -> &[(u64, BehaviorDescriptor)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Behavior in force at `t`, if the trace has started.
    pub fn at(&self, t: u64) -> Option<&BehaviorDescriptor> {
        let idx = self.0.partition_point(|(s, _)| *s <= t);
        idx.checked_sub(1).map(|i| &self.0[i].1)
    }
}

impl TryFrom<Vec<(u64, BehaviorDescriptor)>> for TurbulenceTrace {
    type Error = FitnessError;

    fn try_from(value: Vec<(u64, BehaviorDescriptor)>) -> Result<Self, Self::Error> {
        TurbulenceTrace::new(value)
    }
}

impl From<TurbulenceTrace> for Vec<(u64, BehaviorDescriptor)> {
    fn from(value: TurbulenceTrace) -> Self {
        value.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "marker", rename_all = "snake_case")]
pub enum TimelineEntry {
    Measured {
        supply: SupplyValue,
        fit: FitOutcome,
    },
    Incommensurable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimelineRow {
    pub t: u64,
    #[serde(flatten)]
    pub entry: TimelineEntry,
}

/// Supply and fit at every change point of either trace, from the first
/// instant at which both traces are defined.
pub fn fit_timeline(
    system: &TurbulenceTrace,
    env: &TurbulenceTrace,
    variant: FitVariant,
) -> Result<Vec<TimelineRow>, FitnessError> {
    let (Some(s0), Some(e0)) = (system.points().first(), env.points().first()) else {
        return Err(FitnessError::EmptyTraceOverlap);
    };
    let start = s0.0.max(e0.0);
    let mut times: Vec<u64> = system
        .points()
        .iter()
        .chain(env.points())
        .map(|(t, _)| (*t).max(start))
        .collect();
    times.sort_unstable();
    times.dedup();

    times
        .into_iter()
        .map(|t| {
            let bs = system.at(t).expect("system trace started");
            let be = env.at(t).expect("environment trace started");
            let entry = match supply(bs, be) {
                Ok(s) => TimelineEntry::Measured {
                    supply: s,
                    fit: fit(s, variant),
                },
                Err(FitnessError::IncommensurableBehaviors) => TimelineEntry::Incommensurable,
                Err(e) => return Err(e),
            };
            Ok(TimelineRow { t, entry })
        })
        .collect()
}

/// Writes a timeline as CSV with columns `t,supply,fit,marker`.
pub fn write_timeline_csv<W: io::Write>(rows: &[TimelineRow], out: W) -> Result<(), FitnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "supply", "fit", "marker"])?;
    for row in rows {
        let t = row.t.to_string();
        match row.entry {
            TimelineEntry::Measured { supply, fit } => {
                w.write_record([t, supply.to_string(), fit.to_string(), String::new()])?
            }
            TimelineEntry::Incommensurable => {
                w.write_record([t.as_str(), "", "", "incommensurable"])?
            }
        }
    }
    w.flush()?;
    Ok(())
}
