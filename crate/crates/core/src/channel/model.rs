use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ChannelError;

/// Process generating the yielding point `y(t)` a transmission needs at each step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelKind {
    Constant {
        y: u32,
    },
    /// Lazy ±1 walk clamped to `[min, max]`.
    RandomWalk {
        y0: u32,
        step_prob: f64,
        min: u32,
        max: u32,
    },
    /// Two-state calm/burst channel. With `burst_correlated` the state is a
    /// Markov chain; without it each step draws its state independently with
    /// the chain's stationary burst probability.
    Bursty {
        p_enter: f64,
        p_exit: f64,
        y_calm: u32,
        y_burst: u32,
        burst_correlated: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    #[serde(flatten)]
    pub kind: ChannelKind,
    #[serde(default)]
    pub seed: u64,
}

/// Hidden state of the channel at a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Steady,
    Calm,
    Burst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelTrace {
    pub values: Vec<u32>,
    pub regimes: Vec<Regime>,
}

impl ChannelTrace {
    /// A trace from raw values, all in a single steady regime.
    pub fn from_values(values: Vec<u32>) -> Self {
        let regimes = vec![Regime::Steady; values.len()];
        ChannelTrace { values, regimes }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Maximal runs of constant regime, as half-open index ranges.
    pub fn regime_segments(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.regimes.len() {
            if i == self.regimes.len() || self.regimes[i] != self.regimes[start] {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

fn check_prob(name: &'static str, p: f64) -> Result<(), ChannelError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ChannelError::InvalidBounds(format!(
            "{name}={p} is outside [0,1]"
        )))
    }
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, seed: u64) -> Self {
        ChannelModel { kind, seed }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        match self.kind {
            ChannelKind::Constant { y } => {
                if y == 0 {
                    return Err(ChannelError::InvalidBounds("y must be positive".into()));
                }
            }
            ChannelKind::RandomWalk {
                y0,
                step_prob,
                min,
                max,
            } => {
                check_prob("step_prob", step_prob)?;
                if min == 0 || min > max {
                    return Err(ChannelError::InvalidBounds(format!(
                        "need 1 <= min <= max, got min={min} max={max}"
                    )));
                }
                if !(min..=max).contains(&y0) {
                    return Err(ChannelError::InvalidBounds(format!(
                        "y0={y0} outside [{min},{max}]"
                    )));
                }
            }
            ChannelKind::Bursty {
                p_enter,
                p_exit,
                y_calm,
                y_burst,
                ..
            } => {
                check_prob("p_enter", p_enter)?;
                check_prob("p_exit", p_exit)?;
                if y_calm == 0 || y_burst == 0 {
                    return Err(ChannelError::InvalidBounds(
                        "y_calm and y_burst must be positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Generates `steps` values together with the regime in force at each step.
    pub fn generate(&self, steps: usize) -> Result<ChannelTrace, ChannelError> {
        if steps == 0 {
            return Err(ChannelError::InvalidBounds(
                "steps must be at least 1".into(),
            ));
        }
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut values = Vec::with_capacity(steps);
        let mut regimes = Vec::with_capacity(steps);
        match self.kind {
            ChannelKind::Constant { y } => {
                values.resize(steps, y);
                regimes.resize(steps, Regime::Steady);
            }
            ChannelKind::RandomWalk {
                y0,
                step_prob,
                min,
                max,
            } => {
                let mut y = y0;
                values.push(y);
                for _ in 1..steps {
                    if rng.gen_bool(step_prob) {
                        y = if rng.gen_bool(0.5) { y + 1 } else { y - 1 }.clamp(min, max);
                    }
                    values.push(y);
                }
                regimes.resize(steps, Regime::Steady);
            }
            ChannelKind::Bursty {
                p_enter,
                p_exit,
                y_calm,
                y_burst,
                burst_correlated,
            } => {
                let stationary = if p_enter + p_exit > 0.0 {
                    p_enter / (p_enter + p_exit)
                } else {
                    0.0
                };
                let mut burst = false;
                for _ in 0..steps {
                    burst = if !burst_correlated {
                        rng.gen_bool(stationary)
                    } else if burst {
                        !rng.gen_bool(p_exit)
                    } else {
                        rng.gen_bool(p_enter)
                    };
                    if burst {
                        values.push(y_burst);
                        regimes.push(Regime::Burst);
                    } else {
                        values.push(y_calm);
                        regimes.push(Regime::Calm);
                    }
                }
            }
        }
        Ok(ChannelTrace { values, regimes })
    }
}

/// Values only; see [`ChannelModel::generate`].
pub fn generate_trace(model: &ChannelModel, steps: usize) -> Result<Vec<u32>, ChannelError> {
    model.generate(steps).map(|t| t.values)
}
