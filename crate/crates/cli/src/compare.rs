use std::io::Write;
use std::path::Path;

use serde::Serialize;

use resilience_core::behavior::{commensurable, dist, precedes};
use resilience_core::fitness::{fit, resolve_direction, supply, Direction, FitOutcome, FitVariant};
use resilience_core::organs::{classify, compare_classes, validate, OrganComparison};
use resilience_core::{BehaviorDescriptor, CyberneticClass, ResilienceClass};

use crate::error::{Classify, CliError};
use crate::output::read_json;

#[derive(Serialize)]
struct DescriptorComparison {
    a_precedes_b: bool,
    b_precedes_a: bool,
    commensurable: bool,
    direction: Direction,
    dist: u64,
    /// Supply of `a` taken as the system against `b` as its environment.
    supply: Option<i64>,
    fit: Option<FitOutcome>,
    fit_variant: FitVariant,
}

#[derive(Serialize)]
struct ClassComparison {
    organs: OrganComparison,
    a_class: ResilienceClass,
    b_class: ResilienceClass,
    a_warnings: Vec<String>,
    b_warnings: Vec<String>,
}

fn compare_descriptors(
    a: &Path,
    b: &Path,
    variant: FitVariant,
) -> Result<DescriptorComparison, CliError> {
    let da: BehaviorDescriptor = read_json(a)?;
    let db: BehaviorDescriptor = read_json(b)?;
    let d = dist(&da, &db).classify(a)?;
    let s = if commensurable(&da, &db) {
        Some(supply(&da, &db).classify(a)?)
    } else {
        None
    };
    Ok(DescriptorComparison {
        a_precedes_b: precedes(&da, &db),
        b_precedes_a: precedes(&db, &da),
        commensurable: commensurable(&da, &db),
        direction: resolve_direction(&da, &db),
        dist: d,
        supply: s.map(|s| s.value()),
        fit: s.map(|s| fit(s, variant)),
        fit_variant: variant,
    })
}

fn compare_organs(a: &Path, b: &Path) -> Result<ClassComparison, CliError> {
    let ca: CyberneticClass = read_json(a)?;
    let cb: CyberneticClass = read_json(b)?;
    let warnings = |c: &CyberneticClass| validate(c).iter().map(ToString::to_string).collect();
    Ok(ClassComparison {
        organs: compare_classes(&ca, &cb),
        a_class: classify(&ca),
        b_class: classify(&cb),
        a_warnings: warnings(&ca),
        b_warnings: warnings(&cb),
    })
}

pub fn run(a: &Path, b: &Path, organs: bool, variant: FitVariant) -> Result<(), CliError> {
    let text = if organs {
        serde_json::to_string_pretty(&compare_organs(a, b)?)
    } else {
        serde_json::to_string_pretty(&compare_descriptors(a, b, variant)?)
    }
    .map_err(|e| CliError::Invariant(e.to_string()))?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{text}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}
