//! Business criticality and the maturity level it requires.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Requests above this percentile of the production fleet make a system critical.
pub const REQUESTS_PERCENTILE: u32 = 66;
/// More dependent teams or products than this makes a system critical.
pub const MAX_NON_CRITICAL_CONSUMERS: u32 = 4;
/// A share of yearly revenue above this makes a system critical.
pub const MAX_NON_CRITICAL_REVENUE_SHARE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityLevel {
    ProofOfConcept,
    ProductionNonCritical,
    ProductionCritical,
}

impl CriticalityLevel {
    pub fn value(self) -> u8 {
        match self {
            CriticalityLevel::ProofOfConcept => 1,
            CriticalityLevel::ProductionNonCritical => 3,
            CriticalityLevel::ProductionCritical => 5,
        }
    }

    pub fn from_value(v: u8) -> Option<Self> {
        match v {
            1 => Some(CriticalityLevel::ProofOfConcept),
            3 => Some(CriticalityLevel::ProductionNonCritical),
            5 => Some(CriticalityLevel::ProductionCritical),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CriticalityLevel::ProofOfConcept => "Proof of concept",
            CriticalityLevel::ProductionNonCritical => "Production non-critical",
            CriticalityLevel::ProductionCritical => "Production critical",
        }
    }
}

impl fmt::Display for CriticalityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.value(), self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BusinessCriticality {
    pub level: CriticalityLevel,
    pub justification: String,
}

impl BusinessCriticality {
    /// Criticality supplied by a person rather than derived from usage.
    pub fn manual(level: CriticalityLevel) -> Self {
        BusinessCriticality {
            level,
            justification: "set manually".to_string(),
        }
    }
}

/// Usage facts that decide criticality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemUsage {
    pub requests_per_day: u64,
    pub dependent_consumers: u32,
    /// Fraction of yearly revenue, 0..=1.
    pub revenue_share: f64,
    pub strategic: bool,
    pub in_production: bool,
}

impl SystemUsage {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.revenue_share) {
            return Err(format!(
                "revenue_share must be within [0, 1], got {}",
                self.revenue_share
            ));
        }
        Ok(())
    }
}

/// Fleet-wide percentiles used by criticality and efficiency rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FleetStats {
    /// 66th percentile of daily requests over production systems.
    pub requests_p66: u64,
    /// 80th percentile of training duration in minutes; `None` when no
    /// system reports a duration.
    pub training_duration_p80: Option<f64>,
}

/// Conditions that make a production system critical, in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalityRule {
    Traffic,
    Consumers,
    Revenue,
    Strategic,
}

impl CriticalityRule {
    pub const ORDER: [CriticalityRule; 4] = [
        CriticalityRule::Traffic,
        CriticalityRule::Consumers,
        CriticalityRule::Revenue,
        CriticalityRule::Strategic,
    ];

    pub fn applies(self, usage: &SystemUsage, fleet: &FleetStats) -> bool {
        match self {
            CriticalityRule::Traffic => usage.requests_per_day > fleet.requests_p66,
            CriticalityRule::Consumers => usage.dependent_consumers > MAX_NON_CRITICAL_CONSUMERS,
            CriticalityRule::Revenue => usage.revenue_share > MAX_NON_CRITICAL_REVENUE_SHARE,
            CriticalityRule::Strategic => usage.strategic,
        }
    }

    fn justification(self, usage: &SystemUsage, fleet: &FleetStats) -> String {
        match self {
            CriticalityRule::Traffic => format!(
                "{} requests per day, above the fleet {}th percentile of {}",
                usage.requests_per_day, REQUESTS_PERCENTILE, fleet.requests_p66
            ),
            CriticalityRule::Consumers => format!(
                "{} dependent teams or products, more than {}",
                usage.dependent_consumers, MAX_NON_CRITICAL_CONSUMERS
            ),
            CriticalityRule::Revenue => format!(
                "revenue share {} above {} of yearly revenue",
                usage.revenue_share, MAX_NON_CRITICAL_REVENUE_SHARE
            ),
            CriticalityRule::Strategic => "flagged as strategically important".to_string(),
        }
    }
}

/// First critical condition that holds, if any.
pub fn first_critical_rule(usage: &SystemUsage, fleet: &FleetStats) -> Option<CriticalityRule> {
    CriticalityRule::ORDER
        .into_iter()
        .find(|r| r.applies(usage, fleet))
}

/// Classifies a system. Only production systems can be critical; every
/// comparison is strict.
pub fn determine_criticality(usage: &SystemUsage, fleet: &FleetStats) -> BusinessCriticality {
    if !usage.in_production {
        return BusinessCriticality {
            level: CriticalityLevel::ProofOfConcept,
            justification: "not in production: system under experimentation".to_string(),
        };
    }
    match first_critical_rule(usage, fleet) {
        Some(rule) => BusinessCriticality {
            level: CriticalityLevel::ProductionCritical,
            justification: rule.justification(usage, fleet),
        },
        None => BusinessCriticality {
            level: CriticalityLevel::ProductionNonCritical,
            justification: "in production; no critical condition met".to_string(),
        },
    }
}

/// Maturity level a system of this criticality must reach.
pub fn required_maturity(criticality: &BusinessCriticality) -> u8 {
    criticality.level.value()
}
