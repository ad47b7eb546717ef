use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use resilience_core::channel::{
    compare_runs, simulate, write_trace_csv, ChannelKind, ChannelRunConfig, KnowledgeStore,
    ProtocolRun, RunSummary,
};
use resilience_core::fitness::{fit, FitOutcome, FitVariant, SupplyValue};

use crate::error::{Classify, CliError};
use crate::output::{read_json, OutDir};

#[derive(Serialize)]
struct FitProfile {
    variant: FitVariant,
    /// Mean fit over steps that kept the system's identity.
    mean_fit: Option<f64>,
    identity_loss_steps: usize,
}

#[derive(Serialize)]
struct ProtocolReport<'a> {
    protocol: String,
    algorithm_final: String,
    summary: &'a RunSummary,
    fit: FitProfile,
}

#[derive(Serialize)]
struct ChannelReport<'a> {
    channel: &'a ChannelKind,
    steps: usize,
    seed: u64,
    protocols: BTreeMap<&'a str, ProtocolReport<'a>>,
}

fn fit_profile(run: &ProtocolRun, variant: FitVariant) -> FitProfile {
    let mut sum = 0.0;
    let mut kept = 0usize;
    let mut lost = 0usize;
    for r in &run.records {
        match fit(
            SupplyValue(i64::from(r.yield_point) - i64::from(r.y)),
            variant,
        ) {
            FitOutcome::Fit(v) => {
                sum += v;
                kept += 1;
            }
            FitOutcome::IdentityLoss => lost += 1,
        }
    }
    FitProfile {
        variant,
        mean_fit: (kept > 0).then(|| sum / kept as f64),
        identity_loss_steps: lost,
    }
}

pub fn run(
    config_path: &Path,
    out: &Path,
    seed: Option<u64>,
    variant: FitVariant,
) -> Result<(), CliError> {
    let mut config: ChannelRunConfig = read_json(config_path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    config.validate().classify(config_path)?;

    // a relative store path is taken relative to the config file
    let store_path = config
        .knowledge_store
        .as_ref()
        .map(|p| match config_path.parent() {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.clone(),
        });
    let mut store = match &store_path {
        Some(p) => KnowledgeStore::load(p).classify(p)?,
        None => KnowledgeStore::new(),
    };

    let trace = config
        .model()
        .generate(config.steps)
        .classify(config_path)?;
    let labels = config.labels();
    let mut runs = BTreeMap::new();
    for (label, protocol) in labels.iter().zip(config.all_protocols()) {
        runs.insert(
            label.clone(),
            simulate(&trace, &protocol, &mut store).classify(config_path)?,
        );
    }

    let mut dir = OutDir::create(out)?;
    for label in &labels {
        let run = &runs[label];
        dir.write_with(&format!("trace_{label}.csv"), |w, path| {
            write_trace_csv(run, w).classify(path)
        })?;
    }
    let report = ChannelReport {
        channel: &config.channel,
        steps: config.steps,
        seed: config.seed,
        protocols: runs
            .iter()
            .map(|(label, run)| {
                let algorithm_final = run
                    .records
                    .last()
                    .map(|r| r.algorithm.to_string())
                    .unwrap_or_default();
                let report = ProtocolReport {
                    protocol: run.protocol.clone(),
                    algorithm_final,
                    summary: &run.summary,
                    fit: fit_profile(run, variant),
                };
                (label.as_str(), report)
            })
            .collect(),
    };
    dir.write_json("summary.json", &report)?;
    if runs.len() > 1 {
        let comparison = compare_runs(&runs).classify(config_path)?;
        dir.write_with("compare.csv", |w, path| {
            comparison.write_csv(w).classify(path)
        })?;
    }
    if let Some(p) = &store_path {
        store.save(p).classify(p)?;
    }
    dir.finish("channel", config_path, config.seed)
}
