//! Behavioral resilience modeling.
//!
//! * [`behavior`]: behavior classes, descriptors, their partial order and distance.
//! * [`organs`]: MAPE-K cybernetic classes and their static classification.
//! * [`fitness`]: supply, system-environment fit, over/undershoot accounting.
//! * [`channel`]: elastic, entelechial and antifragile redundancy protocols
//!   over a simulated unreliable channel.
//! * [`sentinel`]: the coal mine / miner / canary scenario.
//! * [`batch`]: seed-indexed Monte Carlo batches, parallel behind the
//!   `parallel` feature.

pub mod batch;
pub mod behavior;
pub mod channel;
pub mod fitness;
pub mod organs;
pub mod sentinel;

pub use behavior::{BehaviorClass, BehaviorDescriptor, ContextFigure, FigureSet, FigureSpec};
pub use fitness::{FitOutcome, FitVariant, SupplyValue};
pub use organs::{CyberneticClass, Organ, OrganVerdict, ResilienceClass};
