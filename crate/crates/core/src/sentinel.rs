//! The coal mine scenario: a miner whose perception cannot register the
//! mine's threat figure borrows the perception of a pool of canaries, and
//! evacuates when enough of them fail.

use std::fmt;
use std::io;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::batch;
use crate::behavior::{
    commensurable, BehaviorClass, BehaviorDescriptor, BehaviorError, FigureSet, FigureSpec,
};
use crate::fitness;

/// Figure telling whether the mine is in its threatening state.
pub const THREAT_FIGURE: &str = "t";

#[derive(Debug, Error)]
pub enum SentinelError {
    #[error("canary pool is empty")]
    EmptyPool,
    #[error("scenario structure violated: {0}")]
    Structure(String),
    #[error("invalid scenario parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Behavior(#[from] BehaviorError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MineState {
    /// Neutral.
    NS,
    /// Threatening.
    TS,
}

fn figures(names: &[&str]) -> FigureSet {
    FigureSet::from_names(names.iter().copied()).expect("static figure names are valid")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoalMine {
    pub p_enter_ts: f64,
    pub p_exit_ts: f64,
    pub context: FigureSet,
}

impl Default for CoalMine {
    fn default() -> Self {
        CoalMine {
            p_enter_ts: 0.01,
            p_exit_ts: 0.1,
            context: figures(&[THREAT_FIGURE, "gas_level", "humidity", "temperature"]),
        }
    }
}

impl CoalMine {
    pub fn behavior(&self) -> BehaviorDescriptor {
        BehaviorDescriptor::new(
            BehaviorClass::Random,
            FigureSpec::Named(self.context.clone()),
            false,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Miner {
    pub perception: FigureSet,
    pub hazard_ts: f64,
}

impl Default for Miner {
    fn default() -> Self {
        Miner {
            perception: figures(&["gas_level", "humidity", "temperature", "vibration"]),
            hazard_ts: 0.02,
        }
    }
}

impl Miner {
    pub fn monitor(&self) -> BehaviorDescriptor {
        BehaviorDescriptor::new(
            BehaviorClass::Purposeful,
            FigureSpec::Named(self.perception.clone()),
            false,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Canary {
    pub perception: FigureSet,
    pub hazard_ts: f64,
}

impl Default for Canary {
    fn default() -> Self {
        Canary {
            perception: figures(&[THREAT_FIGURE, "gas_level", "noise"]),
            hazard_ts: 0.3,
        }
    }
}

impl Canary {
    pub fn monitor(&self) -> BehaviorDescriptor {
        BehaviorDescriptor::new(
            BehaviorClass::Purposeful,
            FigureSpec::Named(self.perception.clone()),
            false,
        )
    }
}

/// Miner and canaries acting as one system: the union of their perceptions,
/// socially.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveMC {
    pub perception: FigureSet,
    pub pool_size: usize,
}

impl CollectiveMC {
    pub fn form(miner: &Miner, canary: &Canary, pool_size: usize) -> Self {
        CollectiveMC {
            perception: miner.perception.union(&canary.perception),
            pool_size,
        }
    }

    pub fn monitor(&self) -> BehaviorDescriptor {
        BehaviorDescriptor::new(
            BehaviorClass::Purposeful,
            FigureSpec::Named(self.perception.clone()),
            true,
        )
    }
}

/// Whether `system` should seek a social relationship to cope with `env`:
/// the two are incommensurable, or the system is undersupplied.
pub fn detect_need_for_social(system: &BehaviorDescriptor, env: &BehaviorDescriptor) -> bool {
    if !commensurable(system, env) {
        return true;
    }
    matches!(fitness::supply(system, env), Ok(s) if s.value() < 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanaryPool {
    pub size: usize,
    pub failed: usize,
}

impl CanaryPool {
    pub fn new(size: usize) -> Self {
        CanaryPool { size, failed: 0 }
    }

    pub fn alive(&self) -> usize {
        self.size - self.failed
    }
}

/// Supply estimated from the pool: half the pool minus the failed canaries.
pub fn estimate_supply(pool: &CanaryPool) -> Result<f64, SentinelError> {
    if pool.size == 0 {
        return Err(SentinelError::EmptyPool);
    }
    Ok(pool.size as f64 / 2.0 - pool.failed as f64)
}

/// Fit estimate; negative supply maps to the `FloatMin` sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitEstimate {
    Fit(f64),
    FloatMin,
}

impl FitEstimate {
    pub fn from_supply(supply: f64) -> Self {
        if supply >= 0.0 {
            FitEstimate::Fit(1.0 / (1.0 + supply))
        } else {
            FitEstimate::FloatMin
        }
    }

    /// Numeric value; the sentinel is the smallest positive normal double.
    pub fn value(self) -> f64 {
        match self {
            FitEstimate::Fit(v) => v,
            FitEstimate::FloatMin => f64::MIN_POSITIVE,
        }
    }
}

impl fmt::Display for FitEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitEstimate::Fit(v) => write!(f, "{v}"),
            FitEstimate::FloatMin => f.write_str("float_min"),
        }
    }
}

impl Serialize for FitEstimate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FitEstimate::Fit(v) => serializer.serialize_f64(*v),
            FitEstimate::FloatMin => serializer.serialize_str("float_min"),
        }
    }
}

pub fn estimate_fit(pool: &CanaryPool) -> Result<FitEstimate, SentinelError> {
    estimate_supply(pool).map(FitEstimate::from_supply)
}

/// When the miner leaves the mine. Either trigger suffices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvacuationPolicy {
    /// Evacuate once estimated supply drops below this value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supply_below: Option<f64>,
    /// Evacuate once the fit estimate reaches this value. Fit climbs toward
    /// 1 as canaries fail, and the `FloatMin` sentinel always triggers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit_at_least: Option<f64>,
}

impl Default for EvacuationPolicy {
    fn default() -> Self {
        EvacuationPolicy {
            supply_below: Some(25.0),
            fit_at_least: None,
        }
    }
}

impl EvacuationPolicy {
    pub fn should_evacuate(&self, supply: f64, fit: FitEstimate) -> bool {
        let by_supply = self.supply_below.is_some_and(|s| supply < s);
        let by_fit = self.fit_at_least.is_some_and(|threshold| match fit {
            FitEstimate::FloatMin => true,
            FitEstimate::Fit(v) => v >= threshold,
        });
        by_supply || by_fit
    }
}

/// Validated scenario: mine, miner, canary template and pool size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub mine: CoalMine,
    #[serde(default)]
    pub miner: Miner,
    #[serde(default)]
    pub canary: Canary,
    #[serde(default = "default_pool")]
    pub pool_size: usize,
}

fn default_pool() -> usize {
    100
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            mine: CoalMine::default(),
            miner: Miner::default(),
            canary: Canary::default(),
            pool_size: default_pool(),
        }
    }
}

fn check_prob(name: &str, p: f64) -> Result<(), SentinelError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SentinelError::InvalidParameter(format!(
            "{name}={p} outside [0,1]"
        )))
    }
}

impl Scenario {
    /// Checks the perception structure that makes the scenario meaningful.
    pub fn validate(&self) -> Result<(), SentinelError> {
        let structure = |msg: &str| Err(SentinelError::Structure(msg.to_string()));
        let t = &self.mine.context;
        let f = &self.miner.perception;
        let g = &self.canary.perception;
        if !t.contains(THREAT_FIGURE) {
            return structure("mine context lacks the threat figure");
        }
        if f.contains(THREAT_FIGURE) {
            return structure("miner must not perceive the threat figure");
        }
        if !g.contains(THREAT_FIGURE) {
            return structure("canary must perceive the threat figure");
        }
        if !t.without(THREAT_FIGURE).is_strict_subset(f) {
            return structure(
                "miner perception must strictly extend the mine's non-threat figures",
            );
        }
        if f.is_subset(g) || g.is_subset(f) {
            return structure("miner and canary perceptions must not be nested");
        }
        if !t.is_strict_subset(&f.union(g)) {
            return structure("joint perception must strictly extend the mine context");
        }
        check_prob("p_enter_ts", self.mine.p_enter_ts)?;
        check_prob("p_exit_ts", self.mine.p_exit_ts)?;
        check_prob("miner.hazard_ts", self.miner.hazard_ts)?;
        check_prob("canary.hazard_ts", self.canary.hazard_ts)?;
        Ok(())
    }

    pub fn with_pool_size(&self, pool_size: usize) -> Self {
        Scenario {
            pool_size,
            ..self.clone()
        }
    }

    pub fn collective(&self) -> CollectiveMC {
        CollectiveMC::form(&self.miner, &self.canary, self.pool_size)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioStep {
    pub t: u64,
    pub mine_state: MineState,
    pub canaries_alive: usize,
    pub supply: Option<f64>,
    pub fit: Option<FitEstimate>,
    pub miner_alive: bool,
    pub evacuated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioRun {
    pub seed: u64,
    pub pool_size: usize,
    pub survived: bool,
    pub evacuation_step: Option<u64>,
    pub failure_step: Option<u64>,
    pub canaries_lost: usize,
    pub steps: Vec<ScenarioStep>,
}

/// Runs one scenario. The mine, the canaries and the miner draw from separate
/// streams of the seeded generator, so the mine evolves identically whatever
/// the pool size.
pub fn simulate(
    scenario: &Scenario,
    policy: &EvacuationPolicy,
    steps: usize,
    seed: u64,
) -> Result<ScenarioRun, SentinelError> {
    scenario.validate()?;
    let stream = |n: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(n);
        rng
    };
    let (mut mine_rng, mut canary_rng, mut miner_rng) = (stream(0), stream(1), stream(2));

    let mut state = MineState::NS;
    let mut pool = CanaryPool::new(scenario.pool_size);
    let mut alive = true;
    let mut evacuation_step = None;
    let mut failure_step = None;
    let mut trace = Vec::with_capacity(steps);

    for t in 0..steps as u64 {
        state = match state {
            MineState::NS if mine_rng.gen_bool(scenario.mine.p_enter_ts) => MineState::TS,
            MineState::TS if mine_rng.gen_bool(scenario.mine.p_exit_ts) => MineState::NS,
            s => s,
        };
        if state == MineState::TS {
            let deaths = (0..pool.alive())
                .filter(|_| canary_rng.gen_bool(scenario.canary.hazard_ts))
                .count();
            pool.failed += deaths;
        }
        let estimate = if pool.size > 0 {
            let supply = estimate_supply(&pool)?;
            Some((supply, FitEstimate::from_supply(supply)))
        } else {
            None
        };
        let present = alive && evacuation_step.is_none();
        if present {
            if let Some((supply, fit)) = estimate {
                if policy.should_evacuate(supply, fit) {
                    evacuation_step = Some(t);
                }
            }
        }
        let draw: f64 = miner_rng.gen();
        if alive
            && evacuation_step.is_none()
            && state == MineState::TS
            && draw < scenario.miner.hazard_ts
        {
            alive = false;
            failure_step = Some(t);
        }
        trace.push(ScenarioStep {
            t,
            mine_state: state,
            canaries_alive: pool.alive(),
            supply: estimate.map(|e| e.0),
            fit: estimate.map(|e| e.1),
            miner_alive: alive,
            evacuated: evacuation_step.is_some(),
        });
    }

    Ok(ScenarioRun {
        seed,
        pool_size: scenario.pool_size,
        survived: alive,
        evacuation_step,
        failure_step,
        canaries_lost: pool.failed,
        steps: trace,
    })
}

/// Per-step CSV: `t,mine_state,canaries_alive,supply,fit,miner_alive,evacuated`.
pub fn write_run_csv<W: io::Write>(run: &ScenarioRun, out: W) -> Result<(), SentinelError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "t",
        "mine_state",
        "canaries_alive",
        "supply",
        "fit",
        "miner_alive",
        "evacuated",
    ])?;
    for s in &run.steps {
        w.write_record([
            s.t.to_string(),
            format!("{:?}", s.mine_state),
            s.canaries_alive.to_string(),
            s.supply.map(|v| v.to_string()).unwrap_or_default(),
            s.fit.map(|v| v.to_string()).unwrap_or_default(),
            s.miner_alive.to_string(),
            s.evacuated.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub failed: usize,
    pub supply: f64,
    pub fit: FitEstimate,
}

/// Supply and fit estimates for every possible count of failed canaries.
pub fn reproduce_supply_fit_curve(pool_size: usize) -> Result<Vec<CurveRow>, SentinelError> {
    (0..=pool_size)
        .map(|failed| {
            let pool = CanaryPool {
                size: pool_size,
                failed,
            };
            Ok(CurveRow {
                failed,
                supply: estimate_supply(&pool)?,
                fit: estimate_fit(&pool)?,
            })
        })
        .collect()
}

/// Curve CSV: `f,supply,fit`.
pub fn write_curve_csv<W: io::Write>(rows: &[CurveRow], out: W) -> Result<(), SentinelError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["f", "supply", "fit"])?;
    for r in rows {
        w.write_record([
            r.failed.to_string(),
            r.supply.to_string(),
            r.fit.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalSummary {
    pub pool_size: usize,
    pub runs: usize,
    pub base_seed: u64,
    pub survived: usize,
    pub survival_rate: f64,
    pub evacuated: usize,
    pub mean_canaries_lost: f64,
}

/// Survival statistics over `runs` consecutive seeds.
pub fn survival_batch(
    scenario: &Scenario,
    policy: &EvacuationPolicy,
    steps: usize,
    runs: usize,
    base_seed: u64,
) -> Result<SurvivalSummary, SentinelError> {
    scenario.validate()?;
    let results = batch::map_seeds(0..runs as u64, |i| {
        simulate(scenario, policy, steps, batch::seed_at(base_seed, i))
            .map(|r| (r.survived, r.evacuation_step.is_some(), r.canaries_lost))
    });
    let mut survived = 0;
    let mut evacuated = 0;
    let mut lost = 0usize;
    for r in results {
        let (s, e, l) = r?;
        survived += usize::from(s);
        evacuated += usize::from(e);
        lost += l;
    }
    Ok(SurvivalSummary {
        pool_size: scenario.pool_size,
        runs,
        base_seed,
        survived,
        survival_rate: if runs == 0 {
            0.0
        } else {
            survived as f64 / runs as f64
        },
        evacuated,
        mean_canaries_lost: if runs == 0 {
            0.0
        } else {
            lost as f64 / runs as f64
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::behavior::precedes;

    #[test]
    fn default_scenario_is_well_formed() {
        let s = Scenario::default();
        s.validate().unwrap();
        let mine = s.mine.behavior();
        let miner = s.miner.monitor();
        let canary = s.canary.monitor();
        assert!(!commensurable(&miner, &canary));
        assert!(!commensurable(&miner, &mine));
        let mc = s.collective().monitor();
        assert!(mc.social);
        assert!(precedes(&mine, &mc));
    }

    #[test]
    fn structural_violations_are_rejected() {
        let mut s = Scenario::default();
        s.miner
            .perception
            .insert(crate::behavior::ContextFigure::new(THREAT_FIGURE).unwrap());
        assert!(matches!(s.validate(), Err(SentinelError::Structure(_))));

        let s = Scenario {
            canary: Canary {
                perception: figures(&["gas_level", "noise"]),
                hazard_ts: 0.3,
            },
            ..Scenario::default()
        };
        assert!(matches!(s.validate(), Err(SentinelError::Structure(_))));

        // canary perception nested in the miner's plus t is still non-nested, but a
        // canary that sees everything the miner does is not
        let s = Scenario {
            canary: Canary {
                perception: figures(&["t", "gas_level", "humidity", "temperature", "vibration"]),
                hazard_ts: 0.3,
            },
            ..Scenario::default()
        };
        assert!(matches!(s.validate(), Err(SentinelError::Structure(_))));

        let s = Scenario {
            miner: Miner {
                perception: figures(&["gas_level", "humidity"]),
                hazard_ts: 0.02,
            },
            ..Scenario::default()
        };
        assert!(matches!(s.validate(), Err(SentinelError::Structure(_))));

        let mut s = Scenario::default();
        s.mine.p_enter_ts = 1.5;
        assert!(matches!(
            s.validate(),
            Err(SentinelError::InvalidParameter(_))
        ));
    }

    #[test]
    fn social_need_detection() {
        let s = Scenario::default();
        assert!(detect_need_for_social(
            &s.miner.monitor(),
            &s.mine.behavior()
        ));
        assert!(!detect_need_for_social(
            &s.collective().monitor(),
            &s.mine.behavior()
        ));
        let b = s.miner.monitor();
        assert!(!detect_need_for_social(&b, &b));
        // commensurable but undersupplied
        let small = BehaviorDescriptor::named(BehaviorClass::Purposeful, ["a"]).unwrap();
        let big = BehaviorDescriptor::named(BehaviorClass::Purposeful, ["a", "b"]).unwrap();
        assert!(detect_need_for_social(&small, &big));
        assert!(!detect_need_for_social(&big, &small));
    }

    #[test]
    fn supply_and_fit_estimates() {
        let est = |failed| estimate_supply(&CanaryPool { size: 100, failed }).unwrap();
        assert_eq!(est(0), 50.0);
        assert_eq!(est(50), 0.0);
        assert_eq!(est(80), -30.0);
        let fit = |failed| estimate_fit(&CanaryPool { size: 100, failed }).unwrap();
        assert_eq!(fit(0), FitEstimate::Fit(1.0 / 51.0));
        assert_eq!(fit(50), FitEstimate::Fit(1.0));
        assert_eq!(fit(80), FitEstimate::FloatMin);
        assert_eq!(FitEstimate::FloatMin.value(), f64::MIN_POSITIVE);
        assert!(matches!(
            estimate_supply(&CanaryPool::new(0)),
            Err(SentinelError::EmptyPool)
        ));
        assert!(matches!(
            estimate_fit(&CanaryPool::new(0)),
            Err(SentinelError::EmptyPool)
        ));
        assert_eq!(
            serde_json::to_string(&FitEstimate::FloatMin).unwrap(),
            "\"float_min\""
        );
    }

    #[test]
    fn curve_points() {
        let rows = reproduce_supply_fit_curve(100).unwrap();
        assert_eq!(rows.len(), 101);
        assert_eq!(
            (rows[49].supply, rows[49].fit),
            (1.0, FitEstimate::Fit(0.5))
        );
        assert_eq!(
            (rows[50].supply, rows[50].fit),
            (0.0, FitEstimate::Fit(1.0))
        );
        assert_eq!(
            (rows[51].supply, rows[51].fit),
            (-1.0, FitEstimate::FloatMin)
        );
        let mut buf = Vec::new();
        write_curve_csv(&rows[49..52], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "f,supply,fit\n49,1,0.5\n50,0,1\n51,-1,float_min\n"
        );
    }

    #[test]
    fn unprotected_miner_dies_at_first_threat() {
        let mut s = Scenario::default().with_pool_size(0);
        s.mine.p_enter_ts = 1.0;
        s.mine.p_exit_ts = 0.0;
        s.miner.hazard_ts = 1.0;
        let run = simulate(&s, &EvacuationPolicy::default(), 10, 3).unwrap();
        assert!(!run.survived);
        assert_eq!(run.failure_step, Some(0));
        assert!(run
            .steps
            .iter()
            .all(|st| st.supply.is_none() && st.fit.is_none()));
    }

    #[test]
    fn safe_mine_keeps_baseline_fit() {
        let mut s = Scenario::default();
        s.mine.p_enter_ts = 0.0;
        let run = simulate(&s, &EvacuationPolicy::default(), 200, 9).unwrap();
        assert!(run.survived);
        assert!(run.evacuation_step.is_none());
        assert!(run
            .steps
            .iter()
            .all(|st| st.fit == Some(FitEstimate::Fit(1.0 / 51.0))));
    }

    #[test]
    fn canaries_trigger_evacuation() {
        let mut s = Scenario::default();
        s.mine.p_enter_ts = 1.0;
        s.mine.p_exit_ts = 0.0;
        s.miner.hazard_ts = 1.0;
        let run = simulate(&s, &EvacuationPolicy::default(), 20, 1).unwrap();
        // about 30 canaries die on the first threatening step
        assert_eq!(run.evacuation_step, Some(0));
        assert!(run.survived);
        let last = run.steps.last().unwrap();
        assert!(last.evacuated && last.miner_alive);
    }

    #[test]
    fn fit_trigger_fires_on_sentinel() {
        let policy = EvacuationPolicy {
            supply_below: None,
            fit_at_least: Some(0.5),
        };
        assert!(!policy.should_evacuate(10.0, FitEstimate::from_supply(10.0)));
        assert!(policy.should_evacuate(1.0, FitEstimate::from_supply(1.0)));
        assert!(policy.should_evacuate(-3.0, FitEstimate::FloatMin));
        assert!(!EvacuationPolicy {
            supply_below: None,
            fit_at_least: None
        }
        .should_evacuate(-3.0, FitEstimate::FloatMin));
    }

    #[test]
    fn runs_are_reproducible() {
        let s = Scenario::default();
        let a = simulate(&s, &EvacuationPolicy::default(), 500, 77).unwrap();
        let b = simulate(&s, &EvacuationPolicy::default(), 500, 77).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        // the mine evolves identically with and without canaries
        let bare = simulate(&s.with_pool_size(0), &EvacuationPolicy::default(), 500, 77).unwrap();
        let states = |r: &ScenarioRun| r.steps.iter().map(|s| s.mine_state).collect::<Vec<_>>();
        assert_eq!(states(&a), states(&bare));
    }

    #[test]
    fn run_csv_layout() {
        let mut s = Scenario::default().with_pool_size(2);
        s.mine.p_enter_ts = 0.0;
        let run = simulate(
            &s,
            &EvacuationPolicy {
                supply_below: None,
                fit_at_least: None,
            },
            2,
            0,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_run_csv(&run, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,mine_state,canaries_alive,supply,fit,miner_alive,evacuated\n\
             0,NS,2,1,0.5,true,false\n1,NS,2,1,0.5,true,false\n"
        );
    }
}
