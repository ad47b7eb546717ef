//! Behavior descriptors and the order-theoretic calculus over them.
//!
//! A [`BehaviorDescriptor`] pairs a [`BehaviorClass`] with the context figures
//! the behavior is based on, plus the social flag. Descriptors are compared
//! with [`precedes`], grouped by [`commensurable`], and measured against each
//! other with [`dist`], which works on the packed 32-bit form from [`encode`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of low bits of an encoded word that carry the figure cardinality.
pub const CARDINALITY_BITS: u32 = 29;

/// Exclusive upper bound on an encodable cardinality.
pub const MAX_CARDINALITY: u64 = 1 << CARDINALITY_BITS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BehaviorError {
    #[error("figure cardinality {0} does not fit in {CARDINALITY_BITS} bits")]
    CardinalityOverflow(u64),
    #[error("context figure identifiers must be non-empty")]
    EmptyFigure,
    #[error("duplicate context figure `{0}`")]
    DuplicateFigure(String),
}

/// The five behavior classes, in increasing order of sophistication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BehaviorClass {
    Random,
    Purposeful,
    Reactive,
    Proactive,
    Antifragile,
}

impl BehaviorClass {
    pub const ALL: [BehaviorClass; 5] = [
        BehaviorClass::Random,
        BehaviorClass::Purposeful,
        BehaviorClass::Reactive,
        BehaviorClass::Proactive,
        BehaviorClass::Antifragile,
    ];

    /// Integer identifier of the class, 1 through 5.
    pub fn projection(self) -> u8 {
        match self {
            BehaviorClass::Random => 1,
            BehaviorClass::Purposeful => 2,
            BehaviorClass::Reactive => 3,
            BehaviorClass::Proactive => 4,
            BehaviorClass::Antifragile => 5,
        }
    }
}

impl fmt::Display for BehaviorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BehaviorClass::Random => "random",
            BehaviorClass::Purposeful => "purposeful",
            BehaviorClass::Reactive => "reactive",
            BehaviorClass::Proactive => "proactive",
            BehaviorClass::Antifragile => "antifragile",
        };
        f.write_str(name)
    }
}

/// Projection map of a behavior class onto `1..=5`.
pub fn pi(class: BehaviorClass) -> u8 {
    class.projection()
}

/// Name of a measurable property through which a behavior manifests.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ContextFigure(String);

impl ContextFigure {
    pub fn new(id: impl Into<String>) -> Result<Self, BehaviorError> {
        let id = id.into();
        if id.is_empty() {
            return Err(BehaviorError::EmptyFigure);
        }
        Ok(ContextFigure(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ContextFigure {
    type Error = BehaviorError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        ContextFigure::new(value)
    }
}

impl From<ContextFigure> for String {
    fn from(value: ContextFigure) -> Self {
        value.0
    }
}

impl fmt::Display for ContextFigure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A duplicate-free set of named context figures.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ContextFigure>", into = "Vec<ContextFigure>")]
pub struct FigureSet(BTreeSet<ContextFigure>);

impl FigureSet {
    pub fn new() -> Self {
        FigureSet(BTreeSet::new())
    }

    /// Builds a set from identifiers, rejecting empty names and duplicates.
    pub fn from_names<I, S>(names: I) -> Result<Self, BehaviorError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let figures = names
            .into_iter()
            .map(ContextFigure::new)
            .collect::<Result<Vec<_>, _>>()?;
        FigureSet::try_from(figures)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.iter().any(|f| f.as_str() == id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ContextFigure> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &FigureSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_strict_subset(&self, other: &FigureSet) -> bool {
        self.0.len() < other.0.len() && self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &FigureSet) -> FigureSet {
        FigureSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn without(&self, id: &str) -> FigureSet {
        FigureSet(
            self.0
                .iter()
                .filter(|f| f.as_str() != id)
                .cloned()
                .collect(),
        )
    }

    pub fn insert(&mut self, figure: ContextFigure) -> bool {
        self.0.insert(figure)
    }
}

impl TryFrom<Vec<ContextFigure>> for FigureSet {
    type Error = BehaviorError;

    fn try_from(figures: Vec<ContextFigure>) -> Result<Self, Self::Error> {
        let mut set = BTreeSet::new();
        for f in figures {
            if set.contains(&f) {
                return Err(BehaviorError::DuplicateFigure(f.0));
            }
            set.insert(f);
        }
        Ok(FigureSet(set))
    }
}

impl From<FigureSet> for Vec<ContextFigure> {
    fn from(value: FigureSet) -> Self {
        value.0.into_iter().collect()
    }
}

/// Which figures a behavior is based on: either named, or only how many.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FigureSpec {
    #[serde(rename = "named")]
    Named(FigureSet),
    #[serde(rename = "cardinality")]
    CardinalityOnly(u64),
}

impl FigureSpec {
    pub fn cardinality(&self) -> u64 {
        match self {
            FigureSpec::Named(set) => set.len() as u64,
            FigureSpec::CardinalityOnly(n) => *n,
        }
    }
}

/// A behavior class applied to a figure specification, with its social flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BehaviorDescriptor {
    pub class: BehaviorClass,
    pub figures: FigureSpec,
    #[serde(default)]
    pub social: bool,
}

impl BehaviorDescriptor {
    pub fn new(class: BehaviorClass, figures: FigureSpec, social: bool) -> Self {
        BehaviorDescriptor {
            class,
            figures,
            social,
        }
    }

    /// Non-social descriptor over a named figure set.
    pub fn named<I, S>(class: BehaviorClass, names: I) -> Result<Self, BehaviorError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Self::new(
            class,
            FigureSpec::Named(FigureSet::from_names(names)?),
            false,
        ))
    }

    /// Non-social descriptor that fixes only the number of figures (the behavior order).
    pub fn with_order(class: BehaviorClass, order: u64) -> Self {
        Self::new(class, FigureSpec::CardinalityOnly(order), false)
    }

    pub fn with_social(mut self, social: bool) -> Self {
        self.social = social;
        self
    }

    pub fn cardinality(&self) -> u64 {
        self.figures.cardinality()
    }

    /// The social attribute.
    pub fn sigma(&self) -> bool {
        self.social
    }
}

/// Order conditions based on figure inclusion (named subsets, or cardinality
/// when either side only carries a count).
pub fn precedes_by_inclusion(b1: &BehaviorDescriptor, b2: &BehaviorDescriptor) -> bool {
    if b1.class.projection() > b2.class.projection() {
        return false;
    }
    match (&b1.figures, &b2.figures) {
        (FigureSpec::Named(f), FigureSpec::Named(g)) => f.is_strict_subset(g),
        (lhs, rhs) => lhs.cardinality() < rhs.cardinality(),
    }
}

/// Order condition based on the social attribute alone.
pub fn precedes_by_sociality(b1: &BehaviorDescriptor, b2: &BehaviorDescriptor) -> bool {
    b1.class == b2.class && !b1.social && b2.social
}

/// `b1 ≺ b2`, evaluated literally: any one of the three conditions suffices.
pub fn precedes(b1: &BehaviorDescriptor, b2: &BehaviorDescriptor) -> bool {
    precedes_by_inclusion(b1, b2) || precedes_by_sociality(b1, b2)
}

pub fn commensurable(b1: &BehaviorDescriptor, b2: &BehaviorDescriptor) -> bool {
    b1 == b2 || precedes(b1, b2) || precedes(b2, b1)
}

/// Packs a descriptor into a 32-bit word: class identifier in bits 31..29,
/// figure cardinality in bits 28..0. The social flag is not encoded.
pub fn encode(b: &BehaviorDescriptor) -> Result<u32, BehaviorError> {
    let n = b.cardinality();
    if n >= MAX_CARDINALITY {
        return Err(BehaviorError::CardinalityOverflow(n));
    }
    Ok((u32::from(b.class.projection()) << CARDINALITY_BITS) | n as u32)
}

/// Behavioral distance: absolute difference of the encoded words.
pub fn dist(b1: &BehaviorDescriptor, b2: &BehaviorDescriptor) -> Result<u64, BehaviorError> {
    let w1 = encode(b1)?;
    let w2 = encode(b2)?;
    Ok(u64::from(w1.abs_diff(w2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use BehaviorClass::*;

    fn named(class: BehaviorClass, names: &[&str]) -> BehaviorDescriptor {
        BehaviorDescriptor::named(class, names.iter().copied()).unwrap()
    }

    #[test]
    fn projection_values() {
        assert_eq!(pi(Random), 1);
        assert_eq!(pi(Antifragile), 5);
        assert_eq!(pi(Proactive), 4);
        let ids: Vec<u8> = BehaviorClass::ALL.iter().map(|c| pi(*c)).collect();
        assert_eq!(ids, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn wider_figure_set_and_higher_class_precedes() {
        let a = named(Purposeful, &["speed"]);
        let b = named(Proactive, &["speed", "luminosity"]);
        assert!(precedes(&a, &b));
        assert!(!precedes(&b, &a));
    }

    #[test]
    fn overlapping_sets_are_incommensurable() {
        let miner = named(
            Purposeful,
            &["gas_level", "humidity", "temperature", "vibration"],
        );
        let canary = named(Purposeful, &["t", "gas_level", "noise"]);
        assert!(!precedes(&miner, &canary));
        assert!(!precedes(&canary, &miner));
        assert!(!commensurable(&miner, &canary));
    }

    #[test]
    fn nothing_precedes_itself() {
        let b = named(Reactive, &["a", "b"]).with_social(true);
        assert!(!precedes(&b, &b));
        assert!(commensurable(&b, &b));
    }

    #[test]
    fn random_mine_precedes_collective() {
        let mine = named(Random, &["t", "gas_level", "humidity", "temperature"]);
        let collective = named(
            Purposeful,
            &[
                "t",
                "gas_level",
                "humidity",
                "temperature",
                "vibration",
                "noise",
            ],
        )
        .with_social(true);
        assert!(precedes(&mine, &collective));
    }

    #[test]
    fn subset_by_enumeration() {
        let a = named(Purposeful, &["1", "4"]);
        let b = named(Purposeful, &["1", "2", "3", "4"]);
        // every element of a appears in b, and b has an element a lacks
        let a_in_b = ["1", "4"].iter().all(|x| ["1", "2", "3", "4"].contains(x));
        assert!(a_in_b);
        assert!(commensurable(&a, &b));
        assert!(precedes(&a, &b));
    }

    #[test]
    fn cardinality_only_falls_back_to_counts() {
        let named3 = named(Purposeful, &["x", "y", "z"]);
        let order4 = BehaviorDescriptor::with_order(Purposeful, 4);
        assert!(precedes(&named3, &order4));
        assert!(!precedes(&order4, &named3));
        let order3 = BehaviorDescriptor::with_order(Purposeful, 3);
        assert!(!precedes(&named3, &order3));
    }

    #[test]
    fn social_flag_orders_same_class() {
        let lone = named(Purposeful, &["a"]);
        let social = lone.clone().with_social(true);
        assert!(precedes(&lone, &social));
        assert!(!precedes(&social, &lone));
        // different classes: the social condition does not apply
        let other = named(Reactive, &["a"]).with_social(true);
        assert!(!precedes_by_sociality(&lone, &other));
    }

    #[test]
    fn encoding_layout() {
        let shift = |class: u32, n: u32| (class << 29) | n;
        assert_eq!(
            encode(&BehaviorDescriptor::with_order(Purposeful, 3)).unwrap(),
            shift(2, 3)
        );
        assert_eq!(
            encode(&BehaviorDescriptor::with_order(Purposeful, 3)).unwrap(),
            1_073_741_827
        );
        assert_eq!(
            encode(&BehaviorDescriptor::with_order(Random, 0)).unwrap(),
            1 << 29
        );
        assert_eq!(
            encode(&BehaviorDescriptor::with_order(Antifragile, 7)).unwrap(),
            shift(5, 7)
        );
        // sigma is not part of the word
        let b = BehaviorDescriptor::with_order(Reactive, 9);
        assert_eq!(
            encode(&b).unwrap(),
            encode(&b.clone().with_social(true)).unwrap()
        );
    }

    #[test]
    fn encoding_rejects_oversized_cardinality() {
        let b = BehaviorDescriptor::with_order(Random, MAX_CARDINALITY);
        assert_eq!(
            encode(&b),
            Err(BehaviorError::CardinalityOverflow(MAX_CARDINALITY))
        );
        assert!(dist(&b, &BehaviorDescriptor::with_order(Random, 1)).is_err());
        let edge = BehaviorDescriptor::with_order(Antifragile, MAX_CARDINALITY - 1);
        assert_eq!(encode(&edge).unwrap(), 0xBFFF_FFFF);
    }

    #[test]
    fn distance_examples() {
        let f = named(Reactive, &["1", "2", "3", "4"]);
        let g = named(Reactive, &["1", "4"]);
        assert_eq!(dist(&f, &g).unwrap(), 2);
        assert_eq!(dist(&f, &f).unwrap(), 0);
        let pur = BehaviorDescriptor::with_order(Purposeful, 3);
        let pro = BehaviorDescriptor::with_order(Proactive, 3);
        assert_eq!(dist(&pur, &pro).unwrap(), 2 * (1 << 29));
    }

    #[test]
    fn figure_sets_reject_duplicates_and_empty_names() {
        assert_eq!(
            FigureSet::from_names(["a", "a"]),
            Err(BehaviorError::DuplicateFigure("a".into()))
        );
        assert_eq!(FigureSet::from_names([""]), Err(BehaviorError::EmptyFigure));
    }

    #[test]
    fn descriptor_json_form() {
        let b = named(Purposeful, &["speed", "luminosity"]);
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(
            json,
            r#"{"class":"purposeful","figures":{"named":["luminosity","speed"]},"social":false}"#
        );
        let back: BehaviorDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, b);

        let c: BehaviorDescriptor = serde_json::from_str(
            r#"{"class":"proactive","figures":{"cardinality":2},"social":true}"#,
        )
        .unwrap();
        assert_eq!(
            c,
            BehaviorDescriptor::with_order(Proactive, 2).with_social(true)
        );

        let dup = serde_json::from_str::<BehaviorDescriptor>(
            r#"{"class":"random","figures":{"named":["t","t"]},"social":false}"#,
        );
        assert!(dup.is_err());
    }
}
