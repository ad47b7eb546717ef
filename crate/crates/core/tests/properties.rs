use proptest::prelude::*;

use resilience_core::behavior::{dist, encode, precedes, precedes_by_inclusion, MAX_CARDINALITY};
use resilience_core::channel::protocol::IdentityProfile;
use resilience_core::channel::{
    run_antifragile, run_elastic, ChannelKind, ChannelModel, ChannelTrace, KnowledgeStore,
    PredictorKind, ProtocolConfig,
};
use resilience_core::fitness::{
    cumulative_overshoot, fit, resolve_direction, shooting, supply, Direction, FitOutcome,
    FitVariant, ShootingKind, SupplyValue,
};
use resilience_core::organs::{classify, compare_classes};
use resilience_core::{BehaviorClass, BehaviorDescriptor, CyberneticClass, ResilienceClass};

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn class() -> impl Strategy<Value = BehaviorClass> {
    (0usize..5).prop_map(|i| BehaviorClass::ALL[i])
}

fn named() -> impl Strategy<Value = BehaviorDescriptor> {
    (class(), 0u32..64, any::<bool>()).prop_map(|(c, mask, social)| {
        let names = NAMES
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, n)| *n);
        BehaviorDescriptor::named(c, names)
            .unwrap()
            .with_social(social)
    })
}

fn ordered() -> impl Strategy<Value = BehaviorDescriptor> {
    (class(), 0..=MAX_CARDINALITY, any::<bool>())
        .prop_map(|(c, n, social)| BehaviorDescriptor::with_order(c, n).with_social(social))
}

fn descriptor() -> impl Strategy<Value = BehaviorDescriptor> {
    prop_oneof![named(), ordered()]
}

fn organ() -> impl Strategy<Value = Option<BehaviorDescriptor>> {
    proptest::option::of(named())
}

fn cybernetic() -> impl Strategy<Value = CyberneticClass> {
    (organ(), organ(), organ(), organ(), organ(), any::<bool>()).prop_map(
        |(m, a, p, e, k, k_stateful)| CyberneticClass {
            m,
            a,
            p,
            e,
            k,
            k_stateful,
        },
    )
}

fn variant() -> impl Strategy<Value = FitVariant> {
    prop_oneof![
        Just(FitVariant::Baseline),
        Just(FitVariant::Quadratic),
        (0u64..20).prop_map(FitVariant::Plateau),
    ]
}

fn channel() -> impl Strategy<Value = ChannelKind> {
    prop_oneof![
        (1u32..6).prop_map(|y| ChannelKind::Constant { y }),
        (1u32..6, 0.0..1.0f64).prop_map(|(y0, step_prob)| ChannelKind::RandomWalk {
            y0,
            step_prob,
            min: 1,
            max: 6
        }),
        (0.0..0.3f64, 0.05..1.0f64, any::<bool>()).prop_map(
            |(p_enter, p_exit, burst_correlated)| {
                ChannelKind::Bursty {
                    p_enter,
                    p_exit,
                    y_calm: 1,
                    y_burst: 5,
                    burst_correlated,
                }
            }
        ),
    ]
}

proptest! {
    #[test]
    fn order_is_irreflexive(b in descriptor()) {
        prop_assert!(!precedes(&b, &b));
    }

    #[test]
    fn distance_is_a_metric(a in descriptor(), b in descriptor(), c in descriptor()) {
        let ab = dist(&a, &b).unwrap();
        prop_assert_eq!(ab, dist(&b, &a).unwrap());
        prop_assert_eq!(ab == 0, encode(&a).unwrap() == encode(&b).unwrap());
        prop_assert!(dist(&a, &c).unwrap() <= ab + dist(&b, &c).unwrap());
    }

    #[test]
    fn inclusion_is_monotone_in_the_larger_set(
        classes in (class(), class()),
        inner in 0u32..64,
        outer in 1u32..64,
        wider in 0u32..64,
        social in any::<bool>(),
    ) {
        let (lo, hi) = if classes.0.projection() <= classes.1.projection() { classes } else { (classes.1, classes.0) };
        let set = |mask: u32| NAMES.iter().enumerate().filter(move |(i, _)| mask & (1 << i) != 0).map(|(_, n)| *n);
        // inner is made a strict subset of outer
        let inner = inner & outer & !(outer & outer.wrapping_neg());
        let a = BehaviorDescriptor::named(lo, set(inner)).unwrap().with_social(social);
        let b = BehaviorDescriptor::named(hi, set(outer)).unwrap();
        prop_assert!(precedes_by_inclusion(&a, &b));
        let b2 = BehaviorDescriptor::named(hi, set(outer | wider)).unwrap();
        prop_assert!(precedes(&a, &b2));
    }

    #[test]
    fn resolved_direction_is_never_two_way(a in descriptor(), b in descriptor()) {
        let there = resolve_direction(&a, &b);
        let back = resolve_direction(&b, &a);
        let mirrored = match there {
            Direction::SystemDominates => Direction::EnvironmentDominates,
            Direction::EnvironmentDominates => Direction::SystemDominates,
            other => other,
        };
        prop_assert_eq!(back, mirrored);
    }

    #[test]
    fn supply_sign_follows_direction(system in descriptor(), env in descriptor()) {
        match supply(&system, &env) {
            Ok(s) if s.value() > 0 => {
                prop_assert_eq!(resolve_direction(&system, &env), Direction::SystemDominates);
            }
            Ok(s) if s.value() < 0 => {
                prop_assert_eq!(resolve_direction(&system, &env), Direction::EnvironmentDominates);
            }
            Ok(_) => {}
            Err(_) => prop_assert_eq!(resolve_direction(&system, &env), Direction::Incommensurable),
        }
    }

    #[test]
    fn fit_is_bounded_and_decreasing(s in 0i64..10_000, v in variant()) {
        let here = fit(SupplyValue(s), v).value().unwrap();
        let next = fit(SupplyValue(s + 1), v).value().unwrap();
        prop_assert!(here <= 1.0 && next <= here);
        if let FitVariant::Plateau(w) = v {
            prop_assert!(s < w as i64 || next < here);
        } else {
            prop_assert!(next < here);
        }
        prop_assert_eq!(fit(SupplyValue(-s - 1), v), FitOutcome::IdentityLoss);
    }

    #[test]
    fn shooting_agrees_with_supply_sign(y in 1u32..10, yp in 1u32..10) {
        let record = shooting(f64::from(y), f64::from(yp), 0);
        let s = i64::from(yp) - i64::from(y);
        let expected = match s.signum() {
            1 => ShootingKind::Overshoot,
            -1 => ShootingKind::Undershoot,
            _ => ShootingKind::Exact,
        };
        prop_assert_eq!(record.kind, expected);
    }

    #[test]
    fn cumulative_overshoot_is_additive(
        a in proptest::collection::vec(1u32..5, 0..30),
        b in proptest::collection::vec(1u32..5, 0..30),
    ) {
        let records = |ys: &[u32], offset: usize| -> Vec<_> {
            ys.iter().enumerate().map(|(i, y)| shooting(f64::from(*y), 5.0, (i + offset) as u64)).collect()
        };
        let whole: Vec<u32> = a.iter().chain(&b).copied().collect();
        let joined = cumulative_overshoot(&records(&whole, 0), 1.0).unwrap();
        let split = cumulative_overshoot(&records(&a, 0), 1.0).unwrap()
            + cumulative_overshoot(&records(&b, a.len()), 1.0).unwrap();
        prop_assert_eq!(joined, split);
    }

    #[test]
    fn comparison_mirrors(c1 in cybernetic(), c2 in cybernetic()) {
        let there = compare_classes(&c1, &c2);
        let back = compare_classes(&c2, &c1);
        for ((_, v), (_, w)) in there.iter().zip(back.iter()) {
            prop_assert_eq!(v.mirrored(), w);
        }
    }

    #[test]
    fn classification_respects_structure(c in cybernetic()) {
        let class = classify(&c);
        if c.k.is_none() {
            prop_assert_ne!(class, ResilienceClass::AntifragileCandidate);
        }
        if class == ResilienceClass::Elastic {
            prop_assert!(c.present().all(|b| b.class == BehaviorClass::Purposeful));
        }
    }

    #[test]
    fn elastic_yield_is_constant(values in proptest::collection::vec(1u32..6, 1..50), yp in 1u32..8) {
        let run = run_elastic(&ChannelTrace::from_values(values), yp).unwrap();
        prop_assert!(run.records.iter().all(|r| r.yield_point == yp && r.cost == u64::from(yp)));
        prop_assert!(run.records.iter().all(|r| r.delivered == (yp > r.y)));
    }

    #[test]
    fn antifragile_changes_only_at_reviews(kind in channel(), seed in any::<u64>()) {
        let trace = ChannelModel::new(kind, seed).generate(600).unwrap();
        let config = ProtocolConfig::antifragile(PredictorKind::WindowMax { window: 8 }, 1.5, IdentityProfile::FileTransfer);
        let mut store = KnowledgeStore::new();
        let run = run_antifragile(&trace, &config, &mut store).unwrap();
        for pair in run.records.windows(2) {
            if pair[0].algorithm != pair[1].algorithm {
                prop_assert_eq!(pair[1].t % 50, 0);
            }
        }
        // every mutation left a lesson behind
        prop_assert_eq!(run.mutated(), !store.is_empty());
        let again = run_antifragile(&trace, &config, &mut KnowledgeStore::new()).unwrap();
        prop_assert_eq!(serde_json::to_string(&run).unwrap(), serde_json::to_string(&again).unwrap());
    }
}
