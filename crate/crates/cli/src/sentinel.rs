use std::path::Path;

use serde::{Deserialize, Serialize};

use resilience_core::sentinel::{
    self, reproduce_supply_fit_curve, survival_batch, write_curve_csv, write_run_csv,
    EvacuationPolicy, Scenario, SurvivalSummary,
};

use crate::error::{Classify, CliError};
use crate::output::{read_json, OutDir};

/// Scenario fields at the top level, plus run parameters.
#[derive(Debug, Deserialize)]
pub struct SentinelConfig {
    #[serde(flatten)]
    pub scenario: Scenario,
    #[serde(default)]
    pub evacuation: EvacuationPolicy,
    pub steps: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Serialize)]
struct RunReport {
    seed: u64,
    pool_size: usize,
    steps: usize,
    survived: bool,
    evacuation_step: Option<u64>,
    failure_step: Option<u64>,
    canaries_lost: usize,
}

#[derive(Serialize)]
struct BatchReport {
    steps: usize,
    with_pool: SurvivalSummary,
    without_pool: SurvivalSummary,
    survival_uplift: f64,
}

pub struct SentinelArgs<'a> {
    pub config: &'a Path,
    pub out: &'a Path,
    pub seed: Option<u64>,
    pub curve: Option<usize>,
    pub runs: Option<usize>,
}

pub fn run(args: SentinelArgs<'_>) -> Result<(), CliError> {
    let mut config: SentinelConfig = read_json(args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    config.scenario.validate().classify(args.config)?;

    let mut dir = OutDir::create(args.out)?;
    let run = sentinel::simulate(
        &config.scenario,
        &config.evacuation,
        config.steps,
        config.seed,
    )
    .classify(args.config)?;
    dir.write_with("run.csv", |w, path| write_run_csv(&run, w).classify(path))?;
    let report = RunReport {
        seed: run.seed,
        pool_size: run.pool_size,
        steps: config.steps,
        survived: run.survived,
        evacuation_step: run.evacuation_step,
        failure_step: run.failure_step,
        canaries_lost: run.canaries_lost,
    };
    dir.write_json("summary.json", &report)?;

    if let Some(runs) = args.runs {
        let steps = config.steps;
        let with_pool = survival_batch(
            &config.scenario,
            &config.evacuation,
            steps,
            runs,
            config.seed,
        )
        .classify(args.config)?;
        let without_pool = survival_batch(
            &config.scenario.with_pool_size(0),
            &config.evacuation,
            steps,
            runs,
            config.seed,
        )
        .classify(args.config)?;
        let survival_uplift = with_pool.survival_rate - without_pool.survival_rate;
        dir.write_json(
            "survival.json",
            &BatchReport {
                steps,
                with_pool,
                without_pool,
                survival_uplift,
            },
        )?;
    }
    if let Some(pool) = args.curve {
        let rows = reproduce_supply_fit_curve(pool).classify(args.config)?;
        dir.write_with("curve.csv", |w, path| {
            write_curve_csv(&rows, w).classify(path)
        })?;
    }
    dir.finish("sentinel", args.config, config.seed)
}
