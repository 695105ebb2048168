//! Fully automated assessment from registry metadata snapshots.
//!
//! A snapshot is a JSON document:
//!
//! ```json
//! { "schema_version": 1, "snapshot_date": "2024-03-01",
//!   "systems": [ { "system_id": "ranker", "team": "search", "test_coverage": 0.4 } ] }
//! ```
//!
//! Absent keys are absent evidence. A rule that needs an absent field
//! yields a large gap.

use crate::assessment::{Assessment, GapEntry};
use crate::model::{GapLevel, QualityModel, SubCharacteristicId};
use crate::scoring::{determine_criticality, FleetStats, SystemUsage};
use crate::stats::{percentile_f64, percentile_u64};
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub const SNAPSHOT_SCHEMA_VERSION: u64 = 1;

/// Coverage at or above this is full testability.
pub const COVERAGE_FULL: f64 = 0.80;
/// Coverage at or above this is minimal testability.
pub const COVERAGE_MINIMAL: f64 = 0.20;
/// Quarterly failed-pipeline ratio at or below this is full resilience.
pub const FAILURE_RATIO_FULL: f64 = 0.10;
/// Quarterly failed-pipeline ratio at or below this is minimal resilience.
pub const FAILURE_RATIO_MINIMAL: f64 = 0.30;
/// Training durations above this fleet percentile are not optimized.
pub const TRAINING_DURATION_PERCENTILE: u32 = 80;

pub const NO_EVIDENCE: &str = "no evidence in registry";
pub const NO_HUMAN_REVIEW: &str = "no human review";

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("malformed registry snapshot: {0}")]
    Malformed(String),
    #[error("duplicate system_id `{0}` in registry snapshot")]
    DuplicateSystem(String),
    #[error("no production systems to compute fleet percentiles from")]
    EmptyProductionSet,
    #[error("override for unknown sub-characteristic `{0}`")]
    UnknownOverride(String),
    #[error("override gives small gap to `{0}`, which has no minimal requirement")]
    IllegalOverride(SubCharacteristicId),
    #[error("malformed overrides document: {0}")]
    MalformedOverrides(String),
}

// ============================================================================
// Metadata
// ============================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Retraining {
    None,
    Manual,
    Scheduled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Automation {
    None,
    Partial,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonitoringCoverage {
    None,
    PerformanceOnly,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Documentation {
    None,
    Partial,
    Complete,
}

/// Human judgement of a requirement's fulfillment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fulfillment {
    None,
    Partial,
    Full,
}

macro_rules! snake_display {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
                f.write_str(v.as_str().unwrap_or_default())
            }
        }
    )*};
}
snake_display!(Retraining, Automation, MonitoringCoverage, Documentation, Fulfillment);

/// One system's registry record. `None` means the registry has no value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SystemMetadata {
    pub system_id: String,
    pub team: String,
    pub in_production: Option<bool>,
    pub deployed_in_serving_system: Option<bool>,
    pub deployed_in_registry: Option<bool>,
    pub outperforms_baseline: Option<bool>,
    pub input_data_validated: Option<bool>,
    pub ab_test_conclusive: Option<bool>,
    pub ab_test_repeated_within_6_months: Option<bool>,
    pub latency_slo_met: Option<bool>,
    pub throughput_slo_met: Option<bool>,
    pub sla_met: Option<bool>,
    pub revenue: Option<f64>,
    pub training_cost: Option<f64>,
    pub inference_cost: Option<f64>,
    pub basic_ops_automated: Option<bool>,
    /// Minutes.
    pub training_duration: Option<f64>,
    pub failed_pipeline_ratio_quarter: Option<f64>,
    pub retraining: Option<Retraining>,
    pub autoscaling_enabled: Option<bool>,
    pub pipeline_automation: Option<Automation>,
    pub monitoring: Option<MonitoringCoverage>,
    pub code_versioned: Option<bool>,
    pub test_coverage: Option<f64>,
    pub service_deployed: Option<bool>,
    pub can_disable_update_revert: Option<bool>,
    pub metadata_logging: Option<Automation>,
    pub documentation: Option<Documentation>,
    pub explainable: Option<bool>,
    pub bias_checked_clean: Option<bool>,
    pub owner_team: Option<String>,
    pub compliance_met: Option<bool>,
    pub bot_filtering: Option<bool>,
    pub requests_per_day: Option<u64>,
    pub dependent_consumers: Option<u32>,
    pub revenue_share: Option<f64>,
    pub strategic: Option<bool>,
}

impl SystemMetadata {
    /// Systems without an explicit `in_production: false` count as production.
    pub fn counts_as_production(&self) -> bool {
        self.in_production != Some(false)
    }

    /// Usage facts for criticality. Missing counts and flags do not trigger
    /// a critical condition.
    pub fn usage(&self) -> SystemUsage {
        SystemUsage {
            requests_per_day: self.requests_per_day.unwrap_or(0),
            dependent_consumers: self.dependent_consumers.unwrap_or(0),
            revenue_share: self.revenue_share.unwrap_or(0.0),
            strategic: self.strategic.unwrap_or(false),
            in_production: self.counts_as_production(),
        }
    }

    fn check_ranges(&self) -> Result<(), String> {
        let fractions = [
            ("failed_pipeline_ratio_quarter", self.failed_pipeline_ratio_quarter),
            ("test_coverage", self.test_coverage),
            ("revenue_share", self.revenue_share),
        ];
        for (name, v) in fractions {
            if let Some(v) = v {
                if !(0.0..=1.0).contains(&v) {
                    return Err(format!("{name} must be within [0, 1], got {v}"));
                }
            }
        }
        let non_negative = [
            ("revenue", self.revenue),
            ("training_cost", self.training_cost),
            ("inference_cost", self.inference_cost),
            ("training_duration", self.training_duration),
        ];
        for (name, v) in non_negative {
            if let Some(v) = v {
                if !v.is_finite() || v < 0.0 {
                    return Err(format!("{name} must be a non-negative number, got {v}"));
                }
            }
        }
        Ok(())
    }
}

/// Parsed snapshot plus non-fatal findings.
#[derive(Debug, Clone, Default)]
pub struct RegistrySnapshot {
    pub snapshot_date: Option<NaiveDate>,
    pub systems: Vec<SystemMetadata>,
    pub warnings: Vec<String>,
}

fn known_fields() -> BTreeSet<String> {
    match serde_json::to_value(SystemMetadata::default()) {
        Ok(serde_json::Value::Object(map)) => map.keys().cloned().collect(),
        _ => BTreeSet::new(),
    }
}

/// Parses a registry snapshot document.
pub fn parse_registry_snapshot(document: &str) -> Result<RegistrySnapshot, RegistryError> {
    let malformed = |m: String| RegistryError::Malformed(m);
    let root: serde_json::Value =
        serde_json::from_str(document).map_err(|e| malformed(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| malformed("top level must be an object".into()))?;
    match obj.get("schema_version").and_then(|v| v.as_u64()) {
        Some(SNAPSHOT_SCHEMA_VERSION) => {}
        Some(v) => return Err(malformed(format!("unsupported schema_version {v}"))),
        None => return Err(malformed("missing schema_version".into())),
    }
    let snapshot_date = match obj.get("snapshot_date") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(
            serde_json::from_value::<NaiveDate>(v.clone())
                .map_err(|e| malformed(format!("snapshot_date: {e}")))?,
        ),
    };
    let entries = obj
        .get("systems")
        .and_then(|v| v.as_array())
        .ok_or_else(|| malformed("missing `systems` list".into()))?;

    let known = known_fields();
    let mut seen = BTreeSet::new();
    let mut out = RegistrySnapshot {
        snapshot_date,
        ..Default::default()
    };
    for (i, entry) in entries.iter().enumerate() {
        let fields = entry
            .as_object()
            .ok_or_else(|| malformed(format!("systems[{i}] is not an object")))?;
        let label = fields
            .get("system_id")
            .and_then(|v| v.as_str())
            .map(str::to_string)
            .unwrap_or_else(|| format!("systems[{i}]"));
        for key in fields.keys() {
            if !known.contains(key) {
                out.warnings
                    .push(format!("{label}: ignoring unknown field `{key}`"));
            }
        }
        // Explicit nulls are absent evidence, same as missing keys.
        let cleaned: serde_json::Map<String, serde_json::Value> = fields
            .iter()
            .filter(|(k, v)| known.contains(*k) && !v.is_null())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let record: SystemMetadata = serde_json::from_value(serde_json::Value::Object(cleaned))
            .map_err(|e| malformed(format!("{label}: {e}")))?;
        if record.system_id.trim().is_empty() {
            return Err(malformed(format!("systems[{i}]: missing system_id")));
        }
        if record.team.trim().is_empty() {
            return Err(malformed(format!("{label}: missing team")));
        }
        record
            .check_ranges()
            .map_err(|m| malformed(format!("{label}: {m}")))?;
        if !seen.insert(record.system_id.clone()) {
            return Err(RegistryError::DuplicateSystem(record.system_id));
        }
        out.systems.push(record);
    }
    Ok(out)
}

/// Fleet percentiles by nearest rank.
///
/// Request volume uses production systems that report it; training
/// duration uses every system that reports it.
pub fn fleet_percentiles(records: &[SystemMetadata]) -> Result<FleetStats, RegistryError> {
    let requests: Vec<u64> = records
        .iter()
        .filter(|r| r.counts_as_production())
        .filter_map(|r| r.requests_per_day)
        .collect();
    let requests_p66 = percentile_u64(&requests, crate::scoring::REQUESTS_PERCENTILE)
        .ok_or(RegistryError::EmptyProductionSet)?;
    let durations: Vec<f64> = records.iter().filter_map(|r| r.training_duration).collect();
    Ok(FleetStats {
        requests_p66,
        training_duration_p80: percentile_f64(&durations, TRAINING_DURATION_PERCENTILE),
    })
}

// ============================================================================
// Overrides
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverrideEntry {
    pub gap: GapLevel,
    pub reason: String,
}

/// Human input for the attributes the registry cannot judge.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ManualOverrides {
    pub readability: Option<Fulfillment>,
    pub modularity: Option<Fulfillment>,
    /// Keyed by sub-characteristic id; always wins over inference.
    pub extra_overrides: BTreeMap<String, OverrideEntry>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OverridesDocument {
    #[serde(default)]
    systems: BTreeMap<String, ManualOverrides>,
}

/// Parses `{"systems": {"<system_id>": {...}}}`.
pub fn parse_overrides(document: &str) -> Result<BTreeMap<String, ManualOverrides>, RegistryError> {
    let doc: OverridesDocument = serde_json::from_str(document)
        .map_err(|e| RegistryError::MalformedOverrides(e.to_string()))?;
    Ok(doc.systems)
}

// ============================================================================
// Inference
// ============================================================================

enum Outcome {
    Full,
    Minimal,
    Neither,
}

/// Collects the evidence one rule looks at.
#[derive(Default)]
struct Evidence {
    seen: Vec<String>,
    missing: Vec<&'static str>,
}

impl Evidence {
    fn get<T: fmt::Display>(&mut self, name: &'static str, value: Option<T>) -> Option<T> {
        match value {
            Some(v) => {
                self.seen.push(format!("{name}={v}"));
                Some(v)
            }
            None => {
                self.missing.push(name);
                None
            }
        }
    }

    fn conclude(self, outcome: impl FnOnce() -> Option<Outcome>) -> GapEntry {
        if !self.missing.is_empty() {
            return GapEntry::new(
                GapLevel::Large,
                format!("{NO_EVIDENCE} (missing: {})", self.missing.join(", ")),
            );
        }
        let facts = self.seen.join(", ");
        match outcome().unwrap_or(Outcome::Neither) {
            Outcome::Full => GapEntry::new(GapLevel::NoGap, format!("full requirement met ({facts})")),
            Outcome::Minimal => GapEntry::new(
                GapLevel::Small,
                format!("only minimal requirement met ({facts})"),
            ),
            Outcome::Neither => {
                GapEntry::new(GapLevel::Large, format!("requirement not met ({facts})"))
            }
        }
    }
}

fn graded(full: bool, minimal: bool) -> Outcome {
    if full {
        Outcome::Full
    } else if minimal {
        Outcome::Minimal
    } else {
        Outcome::Neither
    }
}

fn from_review(value: Option<Fulfillment>, name: &str) -> GapEntry {
    match value {
        None => GapEntry::new(GapLevel::Large, NO_HUMAN_REVIEW),
        Some(Fulfillment::Full) => GapEntry::new(GapLevel::NoGap, format!("human review: {name} full")),
        Some(Fulfillment::Partial) => {
            GapEntry::new(GapLevel::Small, format!("human review: {name} partial"))
        }
        Some(Fulfillment::None) => GapEntry::new(GapLevel::Large, format!("human review: {name} none")),
    }
}

/// Infers the gap of one sub-characteristic from registry evidence.
fn infer_one(
    id: SubCharacteristicId,
    r: &SystemMetadata,
    overrides: &ManualOverrides,
    fleet: &FleetStats,
) -> GapEntry {
    use SubCharacteristicId as S;
    let mut e = Evidence::default();
    match id {
        S::Accuracy => {
            let baseline = e.get("outperforms_baseline", r.outperforms_baseline);
            let validated = e.get("input_data_validated", r.input_data_validated);
            e.conclude(|| Some(graded(baseline? && validated?, baseline?)))
        }
        S::Effectiveness => {
            let ab = e.get("ab_test_conclusive", r.ab_test_conclusive);
            let repeat = e.get(
                "ab_test_repeated_within_6_months",
                r.ab_test_repeated_within_6_months,
            );
            e.conclude(|| Some(graded(ab? && repeat?, ab?)))
        }
        S::Responsiveness => {
            let latency = e.get("latency_slo_met", r.latency_slo_met);
            let throughput = e.get("throughput_slo_met", r.throughput_slo_met);
            e.conclude(|| Some(graded(latency? && throughput?, false)))
        }
        S::Usability => {
            let serving = e.get("deployed_in_serving_system", r.deployed_in_serving_system);
            e.conclude(|| Some(graded(serving?, false)))
        }
        S::CostEffectiveness => {
            let revenue = e.get("revenue", r.revenue);
            let training = e.get("training_cost", r.training_cost);
            let inference = e.get("inference_cost", r.inference_cost);
            e.conclude(|| Some(graded(revenue? > training? + inference?, false)))
        }
        S::Efficiency => {
            let duration = e.get("training_duration", r.training_duration);
            let p80 = e.get("fleet_training_duration_p80", fleet.training_duration_p80);
            let automated = e.get("basic_ops_automated", r.basic_ops_automated);
            e.conclude(|| Some(graded(duration? <= p80? && automated?, automated?)))
        }
        S::Availability => {
            let sla = e.get("sla_met", r.sla_met);
            e.conclude(|| Some(graded(sla?, false)))
        }
        S::Resilience => {
            let ratio = e.get("failed_pipeline_ratio_quarter", r.failed_pipeline_ratio_quarter);
            e.conclude(|| {
                let ratio = ratio?;
                Some(graded(ratio <= FAILURE_RATIO_FULL, ratio <= FAILURE_RATIO_MINIMAL))
            })
        }
        S::Adaptability => {
            let retraining = e.get("retraining", r.retraining);
            e.conclude(|| {
                let retraining = retraining?;
                Some(graded(
                    retraining == Retraining::Scheduled,
                    retraining == Retraining::Manual,
                ))
            })
        }
        S::Scalability => {
            let autoscaling = e.get("autoscaling_enabled", r.autoscaling_enabled);
            let serving = e.get("deployed_in_serving_system", r.deployed_in_serving_system);
            e.conclude(|| Some(graded(autoscaling? && serving?, false)))
        }
        S::Repeatability => {
            let automation = e.get("pipeline_automation", r.pipeline_automation);
            e.conclude(|| {
                let a = automation?;
                Some(graded(a == Automation::Full, a == Automation::Partial))
            })
        }
        S::Monitoring => {
            let monitoring = e.get("monitoring", r.monitoring);
            e.conclude(|| {
                let m = monitoring?;
                Some(graded(
                    m == MonitoringCoverage::Full,
                    m == MonitoringCoverage::PerformanceOnly,
                ))
            })
        }
        S::Maintainability => {
            let versioned = e.get("code_versioned", r.code_versioned);
            let readable = overrides.readability == Some(Fulfillment::Full);
            e.seen.push(format!("readability_full={readable}"));
            e.conclude(|| Some(graded(versioned? && readable, versioned?)))
        }
        S::Modularity => from_review(overrides.modularity, "modularity"),
        S::Testability => {
            let coverage = e.get("test_coverage", r.test_coverage);
            e.conclude(|| {
                let c = coverage?;
                Some(graded(c >= COVERAGE_FULL, c >= COVERAGE_MINIMAL))
            })
        }
        S::Operability => {
            let controls = e.get("can_disable_update_revert", r.can_disable_update_revert);
            let service = e.get("service_deployed", r.service_deployed);
            e.conclude(|| Some(graded(controls?, service?)))
        }
        S::Discoverability => {
            let registered = e.get("deployed_in_registry", r.deployed_in_registry);
            e.conclude(|| Some(graded(registered?, false)))
        }
        S::Readability => from_review(overrides.readability, "readability"),
        S::Traceability => {
            let logging = e.get("metadata_logging", r.metadata_logging);
            e.conclude(|| {
                let l = logging?;
                Some(graded(l == Automation::Full, l == Automation::Partial))
            })
        }
        S::Understandability => {
            let docs = e.get("documentation", r.documentation);
            e.conclude(|| {
                let d = docs?;
                Some(graded(d == Documentation::Complete, d == Documentation::Partial))
            })
        }
        S::Explainability => {
            let explainable = e.get("explainable", r.explainable);
            e.conclude(|| Some(graded(explainable?, false)))
        }
        S::Fairness => {
            let clean = e.get("bias_checked_clean", r.bias_checked_clean);
            e.conclude(|| Some(graded(clean?, false)))
        }
        S::Ownership => {
            let owner = e.get(
                "owner_team",
                r.owner_team.as_deref().filter(|s| !s.trim().is_empty()),
            );
            e.conclude(|| Some(graded(owner.is_some(), false)))
        }
        S::StandardsCompliance => {
            let met = e.get("compliance_met", r.compliance_met);
            e.conclude(|| Some(graded(met?, false)))
        }
        S::Vulnerability => {
            let filtered = e.get("bot_filtering", r.bot_filtering);
            e.conclude(|| Some(graded(filtered?, false)))
        }
    }
}

/// Derives a complete assessment from one registry record.
pub fn infer_gaps(
    record: &SystemMetadata,
    overrides: &ManualOverrides,
    fleet: &FleetStats,
    model: &QualityModel,
    date: NaiveDate,
) -> Result<Assessment, RegistryError> {
    let mut extra = BTreeMap::new();
    for (key, entry) in &overrides.extra_overrides {
        let id: SubCharacteristicId = key
            .parse()
            .map_err(|_| RegistryError::UnknownOverride(key.clone()))?;
        if !model.contains(id) {
            return Err(RegistryError::UnknownOverride(key.clone()));
        }
        if entry.gap == GapLevel::Small && !model.has_minimal_requirement(id) {
            return Err(RegistryError::IllegalOverride(id));
        }
        extra.insert(id, GapEntry::new(entry.gap, entry.reason.clone()));
    }

    let gaps = model
        .ids()
        .map(|id| {
            if let Some(e) = extra.get(&id) {
                return (id, e.clone());
            }
            let mut entry = infer_one(id, record, overrides, fleet);
            // A customised model may drop a minimal requirement the rules know about.
            if entry.gap == GapLevel::Small && !model.has_minimal_requirement(id) {
                entry = GapEntry::new(
                    GapLevel::Large,
                    format!("{}; model has no minimal requirement", entry.reason),
                );
            }
            (id, entry)
        })
        .collect();

    Ok(Assessment {
        team: record.team.clone(),
        system_id: record.system_id.clone(),
        family_members: vec![record.system_id.clone()],
        date,
        criticality: determine_criticality(&record.usage(), fleet),
        gaps,
    })
}
