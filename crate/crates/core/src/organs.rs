//! MAPE-K cybernetic classes: the behaviors of a system's monitor, analyze,
//! plan, execute and knowledge organs, compared organ by organ.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::behavior::{BehaviorClass, BehaviorDescriptor, FigureSpec};
use crate::fitness::{resolve_direction, Direction};

/// Figure names that mark an analysis organ as fit-aware.
pub const FIT_AWARE_FIGURES: [&str; 3] = ["supply", "fit", "risk"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Organ {
    M,
    A,
    P,
    E,
    K,
}

impl Organ {
    pub const ALL: [Organ; 5] = [Organ::M, Organ::A, Organ::P, Organ::E, Organ::K];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Organ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Organ::M => "M",
            Organ::A => "A",
            Organ::P => "P",
            Organ::E => "E",
            Organ::K => "K",
        };
        f.write_str(s)
    }
}

/// How the feedback loop of an adaptive system closes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeedbackKind {
    Exogenous,
    Parametric,
    Structural,
    Genotypical,
}

impl FeedbackKind {
    pub fn may_mutate_identity(self) -> bool {
        matches!(self, FeedbackKind::Genotypical)
    }
}

/// The five organ behaviors of a system; `None` marks an absent organ.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CyberneticClass {
    #[serde(rename = "M")]
    pub m: Option<BehaviorDescriptor>,
    #[serde(rename = "A")]
    pub a: Option<BehaviorDescriptor>,
    #[serde(rename = "P")]
    pub p: Option<BehaviorDescriptor>,
    #[serde(rename = "E")]
    pub e: Option<BehaviorDescriptor>,
    #[serde(rename = "K")]
    pub k: Option<BehaviorDescriptor>,
    #[serde(default)]
    pub k_stateful: bool,
}

impl CyberneticClass {
    pub fn organ(&self, organ: Organ) -> Option<&BehaviorDescriptor> {
        match organ {
            Organ::M => self.m.as_ref(),
            Organ::A => self.a.as_ref(),
            Organ::P => self.p.as_ref(),
            Organ::E => self.e.as_ref(),
            Organ::K => self.k.as_ref(),
        }
    }

    pub fn present(&self) -> impl Iterator<Item = &BehaviorDescriptor> {
        Organ::ALL.into_iter().filter_map(|o| self.organ(o))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrganVerdict {
    Inferior,
    Superior,
    Equal,
    Incommensurable,
    BothAbsent,
    LeftAbsent,
    RightAbsent,
}

impl OrganVerdict {
    pub fn mirrored(self) -> OrganVerdict {
        match self {
            OrganVerdict::Inferior => OrganVerdict::Superior,
            OrganVerdict::Superior => OrganVerdict::Inferior,
            OrganVerdict::LeftAbsent => OrganVerdict::RightAbsent,
            OrganVerdict::RightAbsent => OrganVerdict::LeftAbsent,
            v => v,
        }
    }

    /// True when the left organ sits below the right one, counting an absent
    /// organ as below any present one.
    pub fn left_is_lower(self) -> bool {
        matches!(self, OrganVerdict::Inferior | OrganVerdict::LeftAbsent)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrganVerdict::Inferior => "inferior",
            OrganVerdict::Superior => "superior",
            OrganVerdict::Equal => "equal",
            OrganVerdict::Incommensurable => "incommensurable",
            OrganVerdict::BothAbsent => "both_absent",
            OrganVerdict::LeftAbsent => "left_absent",
            OrganVerdict::RightAbsent => "right_absent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrganComparison([OrganVerdict; 5]);

impl OrganComparison {
    pub fn verdict(&self, organ: Organ) -> OrganVerdict {
        self.0[organ.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Organ, OrganVerdict)> + '_ {
        Organ::ALL.into_iter().zip(self.0.iter().copied())
    }
}

impl Serialize for OrganComparison {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(5))?;
        for (organ, verdict) in self.iter() {
            map.serialize_entry(&organ.to_string(), &verdict)?;
        }
        map.end()
    }
}

fn compare_organ(
    left: Option<&BehaviorDescriptor>,
    right: Option<&BehaviorDescriptor>,
) -> OrganVerdict {
    match (left, right) {
        (None, None) => OrganVerdict::BothAbsent,
        (None, Some(_)) => OrganVerdict::LeftAbsent,
        (Some(_), None) => OrganVerdict::RightAbsent,
        (Some(l), Some(r)) => match resolve_direction(l, r) {
            Direction::Equal => OrganVerdict::Equal,
            Direction::EnvironmentDominates => OrganVerdict::Inferior,
            Direction::SystemDominates => OrganVerdict::Superior,
            Direction::Incommensurable => OrganVerdict::Incommensurable,
        },
    }
}

/// Organ-wise comparison of two cybernetic classes, left against right.
pub fn compare_classes(c1: &CyberneticClass, c2: &CyberneticClass) -> OrganComparison {
    OrganComparison(Organ::ALL.map(|o| compare_organ(c1.organ(o), c2.organ(o))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResilienceClass {
    Elastic,
    Entelechy,
    AntifragileCandidate,
    Unclassified,
}

fn is_adaptive(b: Option<&BehaviorDescriptor>) -> bool {
    b.is_some_and(|b| b.class.projection() >= BehaviorClass::Reactive.projection())
}

fn is_fit_aware(b: &BehaviorDescriptor) -> bool {
    match &b.figures {
        FigureSpec::Named(set) => FIT_AWARE_FIGURES.iter().any(|f| set.contains(f)),
        FigureSpec::CardinalityOnly(_) => false,
    }
}

/// Static resilience classification of a cybernetic class.
///
/// Only structural conditions are checked. Whether a candidate actually keeps
/// improving its fit at run time is a property of a simulation, not of the
/// declaration.
pub fn classify(c: &CyberneticClass) -> ResilienceClass {
    let mut present = c.present().peekable();
    if present.peek().is_some() && present.all(|b| b.class == BehaviorClass::Purposeful) {
        return ResilienceClass::Elastic;
    }
    // either feedback organ being reactive or better makes the loop adaptive
    if !(is_adaptive(c.a.as_ref()) || is_adaptive(c.p.as_ref())) {
        return ResilienceClass::Unclassified;
    }
    let knowledge_persists = c.k.is_some() && c.k_stateful;
    let fit_aware = c.a.as_ref().is_some_and(is_fit_aware);
    if knowledge_persists && fit_aware && is_adaptive(c.p.as_ref()) {
        ResilienceClass::AntifragileCandidate
    } else {
        ResilienceClass::Entelechy
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ValidationWarning {
    RandomPerception,
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationWarning::RandomPerception => {
                f.write_str("monitor organ declared with random behavior")
            }
        }
    }
}

pub fn validate(c: &CyberneticClass) -> Vec<ValidationWarning> {
    let mut warnings = Vec::new();
    if c.m
        .as_ref()
        .is_some_and(|m| m.class == BehaviorClass::Random)
    {
        warnings.push(ValidationWarning::RandomPerception);
    }
    warnings
}
