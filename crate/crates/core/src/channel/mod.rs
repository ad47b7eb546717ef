//! Reliable transmission over an unreliable channel.
//!
//! The channel is abstracted to a series of required yielding points `y(t)`
//! (see [`model`]). Protocols choose how much redundancy `Y(t)` to send each
//! step; a packet survives iff the redundancy exceeds the requirement.

pub mod knowledge;
pub mod model;
pub mod predictor;
pub mod protocol;

use std::collections::BTreeMap;
use std::io;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use knowledge::{AlgorithmKind, KnowledgeEntry, KnowledgeStore};
pub use model::{generate_trace, ChannelKind, ChannelModel, ChannelTrace, Regime};
pub use predictor::{choose_yield, choose_yield_from, Predictor, PredictorKind, YieldChoice};
pub use protocol::{
    run_antifragile, run_elastic, run_entelechial, simulate, Algorithm, IdentityProfile,
    ProtocolConfig, ProtocolKind, ProtocolRun, RunSummary, StepRecord,
};

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("invalid channel bounds: {0}")]
    InvalidBounds(String),
    #[error("invalid protocol configuration: {0}")]
    InvalidConfig(String),
    #[error("predictor has no observations yet")]
    NoObservations,
    #[error("knowledge store is corrupt: {0}")]
    StoreCorrupt(String),
    #[error("runs were produced on different channel traces (`{0}` differs)")]
    TraceMismatch(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A channel experiment as read from a JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRunConfig {
    pub channel: ChannelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<ProtocolConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub protocols: Vec<ProtocolConfig>,
    pub steps: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knowledge_store: Option<PathBuf>,
}

impl ChannelRunConfig {
    /// All protocols named by the config, single `protocol` first.
    pub fn all_protocols(&self) -> Vec<ProtocolConfig> {
        self.protocol
            .iter()
            .chain(&self.protocols)
            .copied()
            .collect()
    }

    pub fn model(&self) -> ChannelModel {
        ChannelModel::new(self.channel.clone(), self.seed)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let protocols = self.all_protocols();
        if protocols.is_empty() {
            return Err(ChannelError::InvalidConfig("no protocol given".into()));
        }
        if self.steps == 0 {
            return Err(ChannelError::InvalidConfig(
                "steps must be at least 1".into(),
            ));
        }
        self.model().validate()?;
        for p in &protocols {
            p.validate()?;
        }
        Ok(())
    }

    /// Unique output label per protocol: its name, suffixed when repeated.
    pub fn labels(&self) -> Vec<String> {
        let protocols = self.all_protocols();
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        let total = |name: &str| protocols.iter().filter(|p| p.name() == name).count();
        protocols
            .iter()
            .map(|p| {
                let n = seen.entry(p.name()).or_default();
                *n += 1;
                if total(p.name()) > 1 {
                    format!("{}-{}", p.name(), n)
                } else {
                    p.name().to_string()
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub protocol: String,
    pub undershoot_count: u64,
    pub cumulative_overshoot: f64,
    pub total_cost: u64,
    pub delivered_fraction: f64,
    pub jitter: f64,
    pub identity_violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub steps: usize,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn row(&self, protocol: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.protocol == protocol)
    }

    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), ChannelError> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Tabulates runs that were produced on the same channel trace.
pub fn compare_runs(
    runs: &BTreeMap<String, ProtocolRun>,
) -> Result<ComparisonReport, ChannelError> {
    let mut iter = runs.iter();
    let Some((_, first)) = iter.next() else {
        return Ok(ComparisonReport {
            steps: 0,
            rows: Vec::new(),
        });
    };
    let reference = first.trace_values();
    for (name, run) in iter {
        if run.trace_values() != reference {
            return Err(ChannelError::TraceMismatch(name.clone()));
        }
    }
    let rows = runs
        .iter()
        .map(|(name, run)| ComparisonRow {
            protocol: name.clone(),
            undershoot_count: run.summary.undershoot_count,
            cumulative_overshoot: run.summary.cumulative_overshoot,
            total_cost: run.summary.total_cost,
            delivered_fraction: run.summary.delivered_fraction,
            jitter: run.summary.jitter,
            identity_violations: run.summary.identity_violations,
        })
        .collect();
    Ok(ComparisonReport {
        steps: reference.len(),
        rows,
    })
}

/// Per-step CSV: `t,y,Y,delivered,shoot_kind,shoot_magnitude,cost,algorithm`.
pub fn write_trace_csv<W: io::Write>(run: &ProtocolRun, out: W) -> Result<(), ChannelError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "t",
        "y",
        "Y",
        "delivered",
        "shoot_kind",
        "shoot_magnitude",
        "cost",
        "algorithm",
    ])?;
    for r in &run.records {
        w.write_record([
            r.t.to_string(),
            r.y.to_string(),
            r.yield_point.to_string(),
            r.delivered.to_string(),
            r.shooting.kind.as_str().to_string(),
            r.shooting.magnitude.to_string(),
            r.cost.to_string(),
            r.algorithm.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_run_gives_one_row() {
        let tr = ChannelTrace::from_values(vec![1, 2, 3]);
        let mut runs = BTreeMap::new();
        runs.insert("elastic".to_string(), run_elastic(&tr, 4).unwrap());
        let report = compare_runs(&runs).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.row("elastic").unwrap().total_cost, 12);
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "protocol,undershoot_count,cumulative_overshoot,total_cost,delivered_fraction,jitter,identity_violations\n\
             elastic,0,6.0,12,1.0,0.0,0\n"
        );
    }

    #[test]
    fn mismatched_traces_are_rejected() {
        let mut runs = BTreeMap::new();
        runs.insert(
            "a".to_string(),
            run_elastic(&ChannelTrace::from_values(vec![1, 2]), 3).unwrap(),
        );
        runs.insert(
            "b".to_string(),
            run_elastic(&ChannelTrace::from_values(vec![1, 3]), 3).unwrap(),
        );
        assert!(matches!(compare_runs(&runs), Err(ChannelError::TraceMismatch(n)) if n == "b"));
    }

    #[test]
    fn trace_csv_layout() {
        let run = run_elastic(&ChannelTrace::from_values(vec![2, 5]), 3).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&run, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,y,Y,delivered,shoot_kind,shoot_magnitude,cost,algorithm\n\
             0,2,3,true,overshoot,1,3,repetition\n\
             1,5,3,false,undershoot,2,3,repetition\n"
        );
    }

    #[test]
    fn run_config_json() {
        let cfg: ChannelRunConfig = serde_json::from_str(
            r#"{"channel":{"kind":"constant","y":2},
                "protocols":[{"kind":"elastic","yield_point":3},{"kind":"elastic","yield_point":4},
                             {"kind":"entelechial","epsilon":1.5}],
                "steps":10,"seed":5}"#,
        )
        .unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.labels(), vec!["elastic-1", "elastic-2", "entelechial"]);
        let empty: ChannelRunConfig =
            serde_json::from_str(r#"{"channel":{"kind":"constant","y":2},"steps":3}"#).unwrap();
        assert!(empty.validate().is_err());
    }
}
