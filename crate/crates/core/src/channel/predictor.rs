use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::ChannelError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PredictorKind {
    /// Maximum of the last `window` observations.
    WindowMax { window: usize },
    /// Exponentially weighted level plus its smoothed slope, extrapolated
    /// `horizon` steps ahead.
    EwmaPlusSlope { alpha: f64, horizon: u32 },
}

impl Default for PredictorKind {
    fn default() -> Self {
        PredictorKind::WindowMax { window: 8 }
    }
}

impl PredictorKind {
    pub fn validate(&self) -> Result<(), ChannelError> {
        match *self {
            PredictorKind::WindowMax { window: 0 } => Err(ChannelError::InvalidConfig(
                "predictor window must be positive".into(),
            )),
            PredictorKind::EwmaPlusSlope { alpha, horizon } if !(alpha > 0.0 && alpha <= 1.0) || horizon == 0 => {
                Err(ChannelError::InvalidConfig(format!(
                    "ewma predictor needs alpha in (0,1] and positive horizon, got alpha={alpha} horizon={horizon}"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Online estimator of the next required yielding point.
#[derive(Debug, Clone)]
pub struct Predictor {
    kind: PredictorKind,
    window: VecDeque<u32>,
    level: Option<f64>,
    slope: f64,
    observed: u64,
}

impl Predictor {
    pub fn new(kind: PredictorKind) -> Self {
        Predictor {
            kind,
            window: VecDeque::new(),
            level: None,
            slope: 0.0,
            observed: 0,
        }
    }

    pub fn kind(&self) -> PredictorKind {
        self.kind
    }

    pub fn observations(&self) -> u64 {
        self.observed
    }

    pub fn observe(&mut self, y: u32) {
        self.observed += 1;
        match self.kind {
            PredictorKind::WindowMax { window } => {
                if self.window.len() == window {
                    self.window.pop_front();
                }
                self.window.push_back(y);
            }
            PredictorKind::EwmaPlusSlope { alpha, .. } => {
                let y = f64::from(y);
                match self.level {
                    None => self.level = Some(y),
                    Some(prev) => {
                        let level = alpha * y + (1.0 - alpha) * prev;
                        self.slope = alpha * (level - prev) + (1.0 - alpha) * self.slope;
                        self.level = Some(level);
                    }
                }
            }
        }
    }

    /// Predicted next value; `None` before the first observation.
    pub fn predict(&self) -> Option<f64> {
        match self.kind {
            PredictorKind::WindowMax { .. } => self.window.iter().max().map(|m| f64::from(*m)),
            PredictorKind::EwmaPlusSlope { horizon, .. } => {
                self.level.map(|l| l + f64::from(horizon) * self.slope)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YieldChoice {
    pub yield_point: u32,
    pub predicted: f64,
    /// Set when no integer satisfies `0 < Y − Π < ε`.
    pub margin_warning: bool,
}

/// Smallest integer yielding point strictly above the predicted requirement.
pub fn choose_yield(predicted: f64, epsilon: f64) -> YieldChoice {
    let y = (predicted.floor() + 1.0).max(1.0);
    let margin = y - predicted;
    YieldChoice {
        yield_point: y as u32,
        predicted,
        margin_warning: !(margin > 0.0 && margin < epsilon),
    }
}

/// [`choose_yield`] on the predictor's current estimate.
pub fn choose_yield_from(predictor: &Predictor, epsilon: f64) -> Result<YieldChoice, ChannelError> {
    predictor
        .predict()
        .map(|p| choose_yield(p, epsilon))
        .ok_or(ChannelError::NoObservations)
}
