#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::path::Path;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn mlq(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mlq").chain(args.iter().copied());
    let code = mlq_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A registry record with every evidence field at its best value.
pub fn complete_record(id: &str, team: &str) -> Value {
    json!({
        "system_id": id,
        "team": team,
        "in_production": true,
        "deployed_in_serving_system": true,
        "deployed_in_registry": true,
        "outperforms_baseline": true,
        "input_data_validated": true,
        "ab_test_conclusive": true,
        "ab_test_repeated_within_6_months": true,
        "latency_slo_met": true,
        "throughput_slo_met": true,
        "sla_met": true,
        "revenue": 1000.0,
        "training_cost": 10.0,
        "inference_cost": 5.0,
        "basic_ops_automated": true,
        "training_duration": 30.0,
        "failed_pipeline_ratio_quarter": 0.0,
        "retraining": "scheduled",
        "autoscaling_enabled": true,
        "pipeline_automation": "full",
        "monitoring": "full",
        "code_versioned": true,
        "test_coverage": 0.9,
        "service_deployed": true,
        "can_disable_update_revert": true,
        "metadata_logging": "full",
        "documentation": "complete",
        "explainable": true,
        "bias_checked_clean": true,
        "owner_team": team,
        "compliance_met": true,
        "bot_filtering": true,
        "requests_per_day": 100,
        "dependent_consumers": 1,
        "revenue_share": 0.001,
        "strategic": false
    })
}

pub fn snapshot(date: &str, systems: Vec<Value>) -> Value {
    json!({ "schema_version": 1, "snapshot_date": date, "systems": systems })
}

/// A fleet of `n` systems with randomly degraded or missing evidence.
pub fn synthetic_snapshot(n: usize, seed: u64, date: &str) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let teams = ["search", "payments", "pricing", "content"];
    let systems = (0..n)
        .map(|i| {
            let team = teams[i % teams.len()];
            let mut rec = complete_record(&format!("system-{i:02}"), team);
            let obj = rec.as_object_mut().unwrap();
            let keys: Vec<String> = obj
                .keys()
                .filter(|k| *k != "system_id" && *k != "team")
                .cloned()
                .collect();
            for k in keys {
                let roll: f64 = rng.gen();
                if roll < 0.08 {
                    obj.remove(&k);
                } else if roll < 0.35 {
                    degrade(obj, &k, &mut rng);
                }
            }
            obj.insert("requests_per_day".into(), json!(rng.gen_range(0..100_000u64)));
            obj.insert("in_production".into(), json!(rng.gen_bool(0.85)));
            rec
        })
        .collect();
    snapshot(date, systems)
}

fn degrade(obj: &mut Map<String, Value>, key: &str, rng: &mut ChaCha8Rng) {
    let value = match key {
        "retraining" => json!(["none", "manual"].choose(rng).unwrap()),
        "pipeline_automation" | "metadata_logging" => json!(["none", "partial"].choose(rng).unwrap()),
        "monitoring" => json!(["none", "performance_only"].choose(rng).unwrap()),
        "documentation" => json!(["none", "partial"].choose(rng).unwrap()),
        "test_coverage" => json!(rng.gen_range(0.0..0.8)),
        "failed_pipeline_ratio_quarter" => json!(rng.gen_range(0.1..0.6)),
        "training_duration" => json!(rng.gen_range(30.0..600.0)),
        "dependent_consumers" => json!(rng.gen_range(0..10u32)),
        "revenue_share" => json!(rng.gen_range(0.0..0.05)),
        "owner_team" => Value::Null,
        "revenue" | "training_cost" | "inference_cost" => json!(rng.gen_range(0.0..100.0)),
        "strategic" => json!(true),
        _ => json!(false),
    };
    obj.insert(key.to_string(), value);
}

pub fn gaps_csv(f: impl Fn(&str) -> &'static str) -> String {
    let ids = [
        "accuracy",
        "effectiveness",
        "responsiveness",
        "usability",
        "cost_effectiveness",
        "efficiency",
        "availability",
        "resilience",
        "adaptability",
        "scalability",
        "repeatability",
        "monitoring",
        "maintainability",
        "modularity",
        "testability",
        "operability",
        "discoverability",
        "readability",
        "traceability",
        "understandability",
        "explainability",
        "fairness",
        "ownership",
        "standards_compliance",
        "vulnerability",
    ];
    let mut s = String::from("sub_characteristic,gap,reason\n");
    for id in ids {
        s.push_str(&format!("{id},{},assessed by team\n", f(id)));
    }
    s
}
