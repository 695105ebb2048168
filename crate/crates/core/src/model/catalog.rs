//! Fixed vocabulary of the quality model: seven characteristics and the
//! twenty-five sub-characteristics that refine them.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Top-level quality characteristic.
///
/// Variants are declared in catalog order; the derived `Ord` follows it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    Utility,
    Economy,
    Robustness,
    Productionizability,
    Modifiability,
    Comprehensibility,
    Responsibility,
}

impl Characteristic {
    pub const ALL: [Characteristic; 7] = [
        Characteristic::Utility,
        Characteristic::Economy,
        Characteristic::Robustness,
        Characteristic::Productionizability,
        Characteristic::Modifiability,
        Characteristic::Comprehensibility,
        Characteristic::Responsibility,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Characteristic::Utility => "utility",
            Characteristic::Economy => "economy",
            Characteristic::Robustness => "robustness",
            Characteristic::Productionizability => "productionizability",
            Characteristic::Modifiability => "modifiability",
            Characteristic::Comprehensibility => "comprehensibility",
            Characteristic::Responsibility => "responsibility",
        }
    }

    /// Capitalised name used in reports and chart labels.
    pub fn label(self) -> &'static str {
        match self {
            Characteristic::Utility => "Utility",
            Characteristic::Economy => "Economy",
            Characteristic::Robustness => "Robustness",
            Characteristic::Productionizability => "Productionizability",
            Characteristic::Modifiability => "Modifiability",
            Characteristic::Comprehensibility => "Comprehensibility",
            Characteristic::Responsibility => "Responsibility",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Characteristic::Utility => {
                "How well the system delivers functions that meet user needs in its intended context."
            }
            Characteristic::Economy => {
                "Performance obtained relative to the resources spent on training and serving."
            }
            Characteristic::Robustness => {
                "How little the system degrades under dynamic or adverse conditions."
            }
            Characteristic::Productionizability => {
                "How easily the system is operated and kept running in production."
            }
            Characteristic::Modifiability => {
                "How effectively the system can be changed as environment and requirements evolve."
            }
            Characteristic::Comprehensibility => {
                "How well users and contributors can find, read and reason about the system."
            }
            Characteristic::Responsibility => {
                "How trustworthy the system is with respect to ownership, security, fairness and transparency."
            }
        }
    }

    pub fn sub_characteristics(self) -> impl Iterator<Item = SubCharacteristicId> {
        SubCharacteristicId::ALL
            .into_iter()
            .filter(move |s| s.parent() == self)
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Characteristic {
    type Err = UnknownIdentifier;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Characteristic::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownIdentifier(s.to_string()))
    }
}

/// Identifier of an atomic quality attribute.
///
/// Declaration order is the row order of the requirement matrix, which is
/// also the tie-break order for recommendations and the row order of
/// compliance tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubCharacteristicId {
    Accuracy,
    Effectiveness,
    Responsiveness,
    Usability,
    CostEffectiveness,
    Efficiency,
    Availability,
    Resilience,
    Adaptability,
    Scalability,
    Repeatability,
    Monitoring,
    Maintainability,
    Modularity,
    Testability,
    Operability,
    Discoverability,
    Readability,
    Traceability,
    Understandability,
    Explainability,
    Fairness,
    Ownership,
    StandardsCompliance,
    Vulnerability,
}

impl SubCharacteristicId {
    pub const COUNT: usize = 25;

    pub const ALL: [SubCharacteristicId; 25] = [
        SubCharacteristicId::Accuracy,
        SubCharacteristicId::Effectiveness,
        SubCharacteristicId::Responsiveness,
        SubCharacteristicId::Usability,
        SubCharacteristicId::CostEffectiveness,
        SubCharacteristicId::Efficiency,
        SubCharacteristicId::Availability,
        SubCharacteristicId::Resilience,
        SubCharacteristicId::Adaptability,
        SubCharacteristicId::Scalability,
        SubCharacteristicId::Repeatability,
        SubCharacteristicId::Monitoring,
        SubCharacteristicId::Maintainability,
        SubCharacteristicId::Modularity,
        SubCharacteristicId::Testability,
        SubCharacteristicId::Operability,
        SubCharacteristicId::Discoverability,
        SubCharacteristicId::Readability,
        SubCharacteristicId::Traceability,
        SubCharacteristicId::Understandability,
        SubCharacteristicId::Explainability,
        SubCharacteristicId::Fairness,
        SubCharacteristicId::Ownership,
        SubCharacteristicId::StandardsCompliance,
        SubCharacteristicId::Vulnerability,
    ];

    /// Row position in the catalog (0-based).
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        use SubCharacteristicId::*;
        match self {
            Accuracy => "accuracy",
            Effectiveness => "effectiveness",
            Responsiveness => "responsiveness",
            Usability => "usability",
            CostEffectiveness => "cost_effectiveness",
            Efficiency => "efficiency",
            Availability => "availability",
            Resilience => "resilience",
            Adaptability => "adaptability",
            Scalability => "scalability",
            Repeatability => "repeatability",
            Monitoring => "monitoring",
            Maintainability => "maintainability",
            Modularity => "modularity",
            Testability => "testability",
            Operability => "operability",
            Discoverability => "discoverability",
            Readability => "readability",
            Traceability => "traceability",
            Understandability => "understandability",
            Explainability => "explainability",
            Fairness => "fairness",
            Ownership => "ownership",
            StandardsCompliance => "standards_compliance",
            Vulnerability => "vulnerability",
        }
    }

    /// Human-readable name ("Cost effectiveness").
    pub fn label(self) -> String {
        let s = self.as_str().replace('_', " ");
        let mut chars = s.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => String::new(),
        }
    }

    pub fn parent(self) -> Characteristic {
        use Characteristic as C;
        use SubCharacteristicId::*;
        match self {
            Accuracy | Effectiveness | Responsiveness | Usability => C::Utility,
            CostEffectiveness | Efficiency => C::Economy,
            Availability | Resilience | Adaptability | Scalability => C::Robustness,
            Repeatability | Monitoring => C::Productionizability,
            Maintainability | Modularity | Testability | Operability => C::Modifiability,
            Discoverability | Readability | Traceability | Understandability => C::Comprehensibility,
            Explainability | Fairness | Ownership | StandardsCompliance | Vulnerability => {
                C::Responsibility
            }
        }
    }
}

impl fmt::Display for SubCharacteristicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SubCharacteristicId {
    type Err = UnknownIdentifier;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        SubCharacteristicId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| UnknownIdentifier(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown identifier `{0}`")]
pub struct UnknownIdentifier(pub String);
