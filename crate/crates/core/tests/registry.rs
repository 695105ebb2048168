mod common;

use common::*;
use mlq_core::model::{GapLevel, QualityModel, SubCharacteristicId};
use mlq_core::registry::{infer_gaps, Fulfillment, ManualOverrides, OverrideEntry, SystemMetadata};
use proptest::prelude::*;
use serde_json::{json, Value};

fn enum_choices(field: &str) -> Option<&'static [&'static str]> {
    Some(match field {
        "retraining" => &["none", "manual", "scheduled"],
        "pipeline_automation" | "metadata_logging" => &["none", "partial", "full"],
        "monitoring" => &["none", "performance_only", "full"],
        "documentation" => &["none", "partial", "complete"],
        _ => return None,
    })
}

/// Varies one field of a complete record according to `choice`.
fn vary(field: &str, value: &Value, choice: u8) -> Value {
    if choice == 0 {
        return Value::Null;
    }
    if let Some(options) = enum_choices(field) {
        return json!(options[choice as usize % options.len()]);
    }
    match value {
        Value::Bool(_) => json!(choice % 2 == 1),
        Value::Number(_) if field == "test_coverage" || field == "failed_pipeline_ratio_quarter" => {
            json!([0.0, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0][choice as usize % 7])
        }
        Value::Number(n) if n.is_u64() => json!(n.as_u64().unwrap() * u64::from(choice)),
        Value::Number(n) => json!(n.as_f64().unwrap() * f64::from(choice)),
        other => other.clone(),
    }
}

fn evidence_fields() -> Vec<String> {
    let Value::Object(map) = serde_json::to_value(complete_record("x")).unwrap() else {
        unreachable!()
    };
    map.keys().filter(|k| *k != "system_id" && *k != "team").cloned().collect()
}

fn record_from(choices: &[u8]) -> SystemMetadata {
    let mut v = serde_json::to_value(complete_record("sys")).unwrap();
    for (field, choice) in evidence_fields().iter().zip(choices) {
        let new = vary(field, &v[field.as_str()], *choice);
        v[field.as_str()] = new;
    }
    serde_json::from_value(v).unwrap()
}

fn without(record: &SystemMetadata, field: &str) -> SystemMetadata {
    let mut v = serde_json::to_value(record).unwrap();
    v[field] = Value::Null;
    serde_json::from_value(v).unwrap()
}

fn review() -> impl Strategy<Value = ManualOverrides> {
    let f = || {
        prop_oneof![
            Just(None),
            Just(Some(Fulfillment::None)),
            Just(Some(Fulfillment::Partial)),
            Just(Some(Fulfillment::Full)),
        ]
    };
    (f(), f()).prop_map(|(readability, modularity)| ManualOverrides {
        readability,
        modularity,
        ..Default::default()
    })
}

fn infer(r: &SystemMetadata, o: &ManualOverrides) -> mlq_core::Assessment {
    infer_gaps(r, o, &fleet(), &QualityModel::default(), date(2024, 1, 5)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn deterministic(choices in proptest::collection::vec(0u8..6, 40), o in review()) {
        let r = record_from(&choices);
        prop_assert_eq!(infer(&r, &o), infer(&r.clone(), &o.clone()));
    }

    #[test]
    fn removing_evidence_never_lowers_a_gap(choices in proptest::collection::vec(0u8..6, 40), o in review(), k in 0usize..64) {
        let r = record_from(&choices);
        let fields = evidence_fields();
        let field = &fields[k % fields.len()];
        let before = infer(&r, &o);
        let after = infer(&without(&r, field), &o);
        for id in SubCharacteristicId::ALL {
            prop_assert!(after.gap(id) >= before.gap(id), "{} after removing {}", id, field);
        }
    }

    #[test]
    fn extra_overrides_are_verbatim(
        choices in proptest::collection::vec(0u8..6, 40),
        picks in proptest::collection::btree_map(0usize..25, (0u8..3, "[a-z ]{0,12}"), 0..6),
    ) {
        let r = record_from(&choices);
        let mut o = ManualOverrides::default();
        for (i, (g, reason)) in &picks {
            let id = SubCharacteristicId::ALL[*i];
            let gap = match (g, is_full_only(*i)) {
                (0, _) => GapLevel::NoGap,
                (1, false) => GapLevel::Small,
                _ => GapLevel::Large,
            };
            o.extra_overrides.insert(id.as_str().into(), OverrideEntry { gap, reason: reason.clone() });
        }
        let a = infer(&r, &o);
        for (key, entry) in &o.extra_overrides {
            let id: SubCharacteristicId = key.parse().unwrap();
            prop_assert_eq!(&a.gaps[&id].reason, &entry.reason);
            prop_assert_eq!(a.gaps[&id].gap, entry.gap);
        }
    }
}

#[test]
fn coverage_bounds_are_inclusive() {
    for (coverage, want) in [
        (0.19, GapLevel::Large),
        (0.20, GapLevel::Small),
        (0.79, GapLevel::Small),
        (0.80, GapLevel::NoGap),
    ] {
        let r = SystemMetadata {
            test_coverage: Some(coverage),
            ..complete_record("s")
        };
        assert_eq!(infer(&r, &reviewed()).gap(SubCharacteristicId::Testability), want, "{coverage}");
    }
}

#[test]
fn failure_ratio_bounds_are_inclusive() {
    for (ratio, want) in [
        (0.31, GapLevel::Large),
        (0.30, GapLevel::Small),
        (0.11, GapLevel::Small),
        (0.10, GapLevel::NoGap),
    ] {
        let r = SystemMetadata {
            failed_pipeline_ratio_quarter: Some(ratio),
            ..complete_record("s")
        };
        assert_eq!(infer(&r, &reviewed()).gap(SubCharacteristicId::Resilience), want, "{ratio}");
    }
}

#[test]
fn thresholds_parsed_from_json_match() {
    let doc = json!({
        "schema_version": 1,
        "systems": [
            {"system_id": "a", "team": "t", "test_coverage": 0.8, "failed_pipeline_ratio_quarter": 0.3},
        ]
    });
    let snap = mlq_core::registry::parse_registry_snapshot(&doc.to_string()).unwrap();
    let a = infer(&snap.systems[0], &reviewed());
    assert_eq!(a.gap(SubCharacteristicId::Testability), GapLevel::NoGap);
    assert_eq!(a.gap(SubCharacteristicId::Resilience), GapLevel::Small);
}
