//! Quality model: catalog rows, the per-level requirement matrix, and the
//! structural checks every model has to pass before it is used for scoring.

mod catalog;
mod config;
mod defaults;

pub use catalog::{Characteristic, SubCharacteristicId, UnknownIdentifier};
pub use config::{load_quality_model, ModelConfig, ModelError};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Highest maturity level.
pub const MAX_LEVEL: u8 = 5;

/// Levels 1..=5 in ascending order.
pub const LEVELS: std::ops::RangeInclusive<u8> = 1..=MAX_LEVEL;

// ============================================================================
// Gap and demand encodings
// ============================================================================

/// Degree to which a sub-characteristic's requirements are unmet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GapLevel {
    /// Full requirement met.
    #[serde(rename = "no")]
    NoGap = 0,
    /// Only the minimal requirement met.
    #[serde(rename = "small")]
    Small = 1,
    /// Nothing met.
    #[serde(rename = "large")]
    Large = 2,
}

impl GapLevel {
    pub const ALL: [GapLevel; 3] = [GapLevel::NoGap, GapLevel::Small, GapLevel::Large];

    /// Numeric weight used by the quality score (0/1/2).
    pub fn value(self) -> u32 {
        self as u32
    }

    /// Canonical CSV token.
    pub fn token(self) -> &'static str {
        match self {
            GapLevel::NoGap => "no",
            GapLevel::Small => "small",
            GapLevel::Large => "large",
        }
    }

    pub fn from_value(v: u32) -> Option<Self> {
        match v {
            0 => Some(GapLevel::NoGap),
            1 => Some(GapLevel::Small),
            2 => Some(GapLevel::Large),
            _ => None,
        }
    }
}

impl fmt::Display for GapLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Parse error for gap tokens.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed gap token `{0}` (expected no/small/large or 0/1/2)")]
pub struct InvalidGapToken(pub String);

impl FromStr for GapLevel {
    type Err = InvalidGapToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "no" | "0" => Ok(GapLevel::NoGap),
            "small" | "1" => Ok(GapLevel::Small),
            "large" | "2" => Ok(GapLevel::Large),
            _ => Err(InvalidGapToken(s.to_string())),
        }
    }
}

/// What a matrix cell asks of a sub-characteristic at a given level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Demand {
    #[serde(rename = "-")]
    NoRequirement,
    #[serde(rename = "min")]
    Minimal,
    #[serde(rename = "full")]
    Full,
}

impl Demand {
    pub fn token(self) -> &'static str {
        match self {
            Demand::NoRequirement => "-",
            Demand::Minimal => "min",
            Demand::Full => "full",
        }
    }

    /// Whether a gap satisfies this demand.
    pub fn is_met_by(self, gap: GapLevel) -> bool {
        match self {
            Demand::NoRequirement => true,
            Demand::Minimal => gap <= GapLevel::Small,
            Demand::Full => gap == GapLevel::NoGap,
        }
    }
}

impl fmt::Display for Demand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Demand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-" => Ok(Demand::NoRequirement),
            "min" => Ok(Demand::Minimal),
            "full" => Ok(Demand::Full),
            other => Err(format!("invalid demand token `{other}` (expected -, min or full)")),
        }
    }
}

// ============================================================================
// Rows and model
// ============================================================================

/// Requirement texts for one sub-characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCharacteristic {
    pub id: SubCharacteristicId,
    pub parent: Characteristic,
    pub minimal_requirement: Option<String>,
    pub full_requirement: String,
    pub reasoning: String,
}

/// One row of the requirement matrix together with its remediation text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRow {
    pub sub: SubCharacteristic,
    /// Demands for levels 1 through 5.
    pub demands: [Demand; 5],
    pub remediation: String,
}

impl ModelRow {
    pub fn demand(&self, level: u8) -> Demand {
        assert!(LEVELS.contains(&level), "level {level} outside 1..=5");
        self.demands[usize::from(level - 1)]
    }
}

/// Catalog plus requirement matrix.
///
/// Rows are keyed by id, so iteration always follows catalog order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QualityModel {
    rows: BTreeMap<SubCharacteristicId, ModelRow>,
}

impl Default for QualityModel {
    fn default() -> Self {
        defaults::default_model()
    }
}

impl QualityModel {
    /// Builds a model without checking it. Use [`validate_model`] before
    /// scoring against a model assembled this way.
    pub fn from_rows_unchecked(rows: impl IntoIterator<Item = ModelRow>) -> Self {
        QualityModel {
            rows: rows.into_iter().map(|r| (r.sub.id, r)).collect(),
        }
    }

    /// Builds a model and rejects it if any structural invariant fails.
    pub fn from_rows(rows: impl IntoIterator<Item = ModelRow>) -> Result<Self, Vec<Violation>> {
        let model = Self::from_rows_unchecked(rows);
        let violations = validate_model(&model);
        if violations.is_empty() {
            Ok(model)
        } else {
            Err(violations)
        }
    }

    /// Number of sub-characteristics (N in the quality score).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &ModelRow> {
        self.rows.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = SubCharacteristicId> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, id: SubCharacteristicId) -> Option<&ModelRow> {
        self.rows.get(&id)
    }

    pub fn row_mut(&mut self, id: SubCharacteristicId) -> Option<&mut ModelRow> {
        self.rows.get_mut(&id)
    }

    pub fn contains(&self, id: SubCharacteristicId) -> bool {
        self.rows.contains_key(&id)
    }

    /// Demand of `id` at `level`; rows absent from the model demand nothing.
    pub fn demand(&self, id: SubCharacteristicId, level: u8) -> Demand {
        self.row(id)
            .map(|r| r.demand(level))
            .unwrap_or(Demand::NoRequirement)
    }

    pub fn has_minimal_requirement(&self, id: SubCharacteristicId) -> bool {
        self.row(id)
            .map(|r| r.sub.minimal_requirement.is_some())
            .unwrap_or(false)
    }

    pub fn remediation(&self, id: SubCharacteristicId) -> &str {
        self.row(id).map(|r| r.remediation.as_str()).unwrap_or("")
    }

    /// Sub-characteristics of `characteristic` present in this model.
    pub fn members(&self, characteristic: Characteristic) -> impl Iterator<Item = &ModelRow> {
        self.rows
            .values()
            .filter(move |r| r.sub.parent == characteristic)
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn fingerprint(&self) -> String {
        let canonical = crate::canonical::to_canonical_json(self)
            .expect("quality model always serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

// ============================================================================
// Validation
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    MissingRow,
    ParentMismatch {
        expected: Characteristic,
        found: Characteristic,
    },
    MinimalWithoutRequirement,
    NonMonotone {
        previous: Demand,
        current: Demand,
    },
    LevelFiveNotFull,
}

/// A broken model invariant with its row/level coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub sub: SubCharacteristicId,
    pub level: Option<u8>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = match self.level {
            Some(level) => format!("{} level {}", self.sub, level),
            None => self.sub.to_string(),
        };
        match &self.kind {
            ViolationKind::MissingRow => write!(f, "{at}: row missing from matrix"),
            ViolationKind::ParentMismatch { expected, found } => {
                write!(f, "{at}: parent must be {expected}, found {found}")
            }
            ViolationKind::MinimalWithoutRequirement => write!(
                f,
                "{at}: Minimal demand on sub-characteristic without minimal requirement"
            ),
            ViolationKind::NonMonotone { previous, current } => write!(
                f,
                "{at}: demand decreases from {previous} to {current}"
            ),
            ViolationKind::LevelFiveNotFull => write!(f, "{at}: level-5 demand is not Full"),
        }
    }
}

/// Every violated structural invariant, ordered by row then level.
pub fn validate_model(model: &QualityModel) -> Vec<Violation> {
    let mut out = Vec::new();
    for id in SubCharacteristicId::ALL {
        let Some(row) = model.row(id) else {
            out.push(Violation {
                sub: id,
                level: None,
                kind: ViolationKind::MissingRow,
            });
            continue;
        };
        if row.sub.parent != id.parent() {
            out.push(Violation {
                sub: id,
                level: None,
                kind: ViolationKind::ParentMismatch {
                    expected: id.parent(),
                    found: row.sub.parent,
                },
            });
        }
        let has_minimal = row.sub.minimal_requirement.is_some();
        for level in LEVELS {
            let demand = row.demand(level);
            if demand == Demand::Minimal && !has_minimal {
                out.push(Violation {
                    sub: id,
                    level: Some(level),
                    kind: ViolationKind::MinimalWithoutRequirement,
                });
            }
            if level > 1 {
                let previous = row.demand(level - 1);
                if demand < previous {
                    out.push(Violation {
                        sub: id,
                        level: Some(level),
                        kind: ViolationKind::NonMonotone {
                            previous,
                            current: demand,
                        },
                    });
                }
            }
            if level == MAX_LEVEL && demand != Demand::Full {
                out.push(Violation {
                    sub: id,
                    level: Some(level),
                    kind: ViolationKind::LevelFiveNotFull,
                });
            }
        }
    }
    out
}
