#![allow(dead_code)]

use chrono::NaiveDate;
use mlq_core::assessment::{Assessment, GapEntry};
use mlq_core::model::{GapLevel, QualityModel, SubCharacteristicId};
use mlq_core::registry::{
    Automation, Documentation, Fulfillment, ManualOverrides, MonitoringCoverage, Retraining,
    SystemMetadata,
};
use mlq_core::scoring::criticality::FleetStats;
use mlq_core::scoring::{BusinessCriticality, CriticalityLevel};
use proptest::prelude::*;

/// Requirement matrix as printed: "-" none, "✓" minimal, "✓✓" full, levels 1..5.
pub const MATRIX: [(&str, [&str; 5]); 25] = [
    ("accuracy", ["✓", "✓", "✓✓", "✓✓", "✓✓"]),
    ("effectiveness", ["-", "-", "✓", "✓", "✓✓"]),
    ("responsiveness", ["✓✓", "✓✓", "✓✓", "✓✓", "✓✓"]),
    ("usability", ["-", "-", "✓✓", "✓✓", "✓✓"]),
    ("cost_effectiveness", ["-", "-", "-", "-", "✓✓"]),
    ("efficiency", ["-", "-", "-", "✓", "✓✓"]),
    ("availability", ["✓✓", "✓✓", "✓✓", "✓✓", "✓✓"]),
    ("resilience", ["-", "-", "✓", "✓", "✓✓"]),
    ("adaptability", ["-", "-", "✓", "✓✓", "✓✓"]),
    ("scalability", ["-", "-", "-", "-", "✓✓"]),
    ("repeatability", ["-", "-", "✓", "✓✓", "✓✓"]),
    ("monitoring", ["-", "-", "✓", "✓", "✓✓"]),
    ("maintainability", ["-", "✓", "✓", "✓", "✓✓"]),
    ("modularity", ["-", "✓", "✓", "✓", "✓✓"]),
    ("testability", ["-", "✓", "✓", "✓", "✓✓"]),
    ("operability", ["✓", "✓", "✓✓", "✓✓", "✓✓"]),
    ("discoverability", ["-", "-", "✓✓", "✓✓", "✓✓"]),
    ("readability", ["-", "-", "✓", "✓", "✓✓"]),
    ("traceability", ["-", "-", "✓", "✓✓", "✓✓"]),
    ("understandability", ["✓", "✓", "✓✓", "✓✓", "✓✓"]),
    ("explainability", ["-", "-", "-", "✓✓", "✓✓"]),
    ("fairness", ["✓✓", "✓✓", "✓✓", "✓✓", "✓✓"]),
    ("ownership", ["✓✓", "✓✓", "✓✓", "✓✓", "✓✓"]),
    ("standards_compliance", ["✓✓", "✓✓", "✓✓", "✓✓", "✓✓"]),
    ("vulnerability", ["✓✓", "✓✓", "✓✓", "✓✓", "✓✓"]),
];

pub const FULL_ONLY: [&str; 11] = [
    "responsiveness",
    "usability",
    "cost_effectiveness",
    "availability",
    "scalability",
    "discoverability",
    "explainability",
    "fairness",
    "ownership",
    "standards_compliance",
    "vulnerability",
];

/// Largest gap value a cell symbol tolerates.
pub fn tolerance(symbol: &str) -> u8 {
    match symbol {
        "-" => 2,
        "✓" => 1,
        "✓✓" => 0,
        other => panic!("bad symbol {other}"),
    }
}

/// Brute force: the highest level whose whole column is met, 0 if none.
pub fn oracle_maturity(gaps: &[u8; 25]) -> u8 {
    let mut best = 0;
    for level in 1..=5u8 {
        let ok = MATRIX
            .iter()
            .zip(gaps)
            .all(|((_, cells), g)| *g <= tolerance(cells[level as usize - 1]));
        if ok {
            best = level;
        }
    }
    best
}

pub fn oracle_score(gaps: &[u8; 25]) -> u8 {
    let sum: u32 = gaps.iter().map(|g| u32::from(*g)).sum();
    ((100 * (50 - sum)) / 50) as u8
}

pub fn column_violators(gaps: &[u8; 25], level: u8) -> Vec<&'static str> {
    MATRIX
        .iter()
        .zip(gaps)
        .filter(|((_, cells), g)| **g > tolerance(cells[level as usize - 1]))
        .map(|((id, _), _)| *id)
        .collect()
}

pub fn is_full_only(index: usize) -> bool {
    FULL_ONLY.contains(&MATRIX[index].0)
}

pub fn date(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

pub fn gap_from(v: u8) -> GapLevel {
    match v {
        0 => GapLevel::NoGap,
        1 => GapLevel::Small,
        _ => GapLevel::Large,
    }
}

pub fn assessment(gaps: &[u8; 25], level: CriticalityLevel) -> Assessment {
    assessment_for("team", "system", date(2024, 1, 5), gaps, level)
}

pub fn assessment_for(
    team: &str,
    system: &str,
    on: NaiveDate,
    gaps: &[u8; 25],
    level: CriticalityLevel,
) -> Assessment {
    Assessment {
        team: team.into(),
        system_id: system.into(),
        family_members: vec![system.into()],
        date: on,
        criticality: BusinessCriticality::manual(level),
        gaps: SubCharacteristicId::ALL
            .into_iter()
            .zip(gaps)
            .map(|(id, g)| (id, GapEntry::new(gap_from(*g), format!("{id} gap {g}"))))
            .collect(),
    }
}

/// Random legal gap vectors: full-only rows never take a small gap.
pub fn legal_gaps() -> impl Strategy<Value = [u8; 25]> {
    proptest::collection::vec(0u8..3, 25).prop_map(|v| {
        let mut out = [0u8; 25];
        for (i, g) in v.into_iter().enumerate() {
            out[i] = if is_full_only(i) && g == 1 { 2 } else { g };
        }
        out
    })
}

pub fn criticality() -> impl Strategy<Value = CriticalityLevel> {
    prop_oneof![
        Just(CriticalityLevel::ProofOfConcept),
        Just(CriticalityLevel::ProductionNonCritical),
        Just(CriticalityLevel::ProductionCritical),
    ]
}

pub fn default_model() -> QualityModel {
    QualityModel::default()
}

pub fn complete_record(id: &str) -> SystemMetadata {
    SystemMetadata {
        system_id: id.into(),
        team: "search".into(),
        in_production: Some(true),
        deployed_in_serving_system: Some(true),
        deployed_in_registry: Some(true),
        outperforms_baseline: Some(true),
        input_data_validated: Some(true),
        ab_test_conclusive: Some(true),
        ab_test_repeated_within_6_months: Some(true),
        latency_slo_met: Some(true),
        throughput_slo_met: Some(true),
        sla_met: Some(true),
        revenue: Some(100.0),
        training_cost: Some(10.0),
        inference_cost: Some(5.0),
        basic_ops_automated: Some(true),
        training_duration: Some(60.0),
        failed_pipeline_ratio_quarter: Some(0.0),
        retraining: Some(Retraining::Scheduled),
        autoscaling_enabled: Some(true),
        pipeline_automation: Some(Automation::Full),
        monitoring: Some(MonitoringCoverage::Full),
        code_versioned: Some(true),
        test_coverage: Some(0.9),
        service_deployed: Some(true),
        can_disable_update_revert: Some(true),
        metadata_logging: Some(Automation::Full),
        documentation: Some(Documentation::Complete),
        explainable: Some(true),
        bias_checked_clean: Some(true),
        owner_team: Some("search".into()),
        compliance_met: Some(true),
        bot_filtering: Some(true),
        requests_per_day: Some(10),
        dependent_consumers: Some(1),
        revenue_share: Some(0.0),
        strategic: Some(false),
    }
}

pub fn reviewed() -> ManualOverrides {
    ManualOverrides {
        readability: Some(Fulfillment::Full),
        modularity: Some(Fulfillment::Full),
        ..Default::default()
    }
}

pub fn fleet() -> FleetStats {
    FleetStats {
        requests_p66: 1000,
        training_duration_p80: Some(120.0),
    }
}
