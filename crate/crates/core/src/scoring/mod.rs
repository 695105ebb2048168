//! Quality score, maturity level, gap colors and recommendations.
//!
//! Every function here is pure: same assessment and model, same answer.

pub mod criticality;

pub use criticality::{
    determine_criticality, first_critical_rule, required_maturity, BusinessCriticality,
    CriticalityLevel, CriticalityRule, FleetStats, SystemUsage, MAX_NON_CRITICAL_CONSUMERS,
    MAX_NON_CRITICAL_REVENUE_SHARE, REQUESTS_PERCENTILE,
};

use crate::assessment::Assessment;
use crate::model::{Characteristic, GapLevel, QualityModel, SubCharacteristicId, LEVELS, MAX_LEVEL};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Numeric value of a large gap; the denominator scale of the score.
pub const LARGE_GAP_VALUE: u32 = 2;

/// `floor(100 * (1 - sum / (LARGE_GAP_VALUE * n)))` in exact integer arithmetic.
fn normalized_score(gaps: impl Iterator<Item = GapLevel>) -> u8 {
    let (sum, n) = gaps.fold((0u32, 0u32), |(s, n), g| (s + g.value(), n + 1));
    if n == 0 {
        return 100;
    }
    let max = LARGE_GAP_VALUE * n;
    // sum <= max, so the numerator is non-negative and division floors.
    (100 * (max - sum) / max) as u8
}

/// Overall quality score, 0..=100.
pub fn quality_score(assessment: &Assessment, model: &QualityModel) -> u8 {
    normalized_score(model.ids().map(|id| assessment.gap(id)))
}

/// Quality score restricted to each characteristic's own rows.
pub fn characteristic_scores(
    assessment: &Assessment,
    model: &QualityModel,
) -> BTreeMap<Characteristic, u8> {
    Characteristic::ALL
        .into_iter()
        .map(|c| {
            let score = normalized_score(model.members(c).map(|r| assessment.gap(r.sub.id)));
            (c, score)
        })
        .collect()
}

/// Whether every demand in column `level` is met.
pub fn satisfies_level(assessment: &Assessment, level: u8, model: &QualityModel) -> bool {
    model
        .rows()
        .all(|row| row.demand(level).is_met_by(assessment.gap(row.sub.id)))
}

/// Highest satisfied level, or 0 when even level 1 fails.
pub fn maturity_level(assessment: &Assessment, model: &QualityModel) -> u8 {
    LEVELS
        .rev()
        .find(|&l| satisfies_level(assessment, l, model))
        .unwrap_or(0)
}

// ============================================================================
// Colors
// ============================================================================

/// Remediation urgency of a sub-characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapColor {
    /// Blocks the next maturity level.
    Red,
    /// Blocks a level above the next one, up to the required level.
    Orange,
    /// Blocks only levels above the required one.
    Yellow,
    /// No gap.
    Green,
}

impl GapColor {
    /// Severity order, most urgent first.
    pub const ALL: [GapColor; 4] = [GapColor::Red, GapColor::Orange, GapColor::Yellow, GapColor::Green];

    pub fn as_str(self) -> &'static str {
        match self {
            GapColor::Red => "red",
            GapColor::Orange => "orange",
            GapColor::Yellow => "yellow",
            GapColor::Green => "green",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GapColor::Red => "Red",
            GapColor::Orange => "Orange",
            GapColor::Yellow => "Yellow",
            GapColor::Green => "Green",
        }
    }
}

impl fmt::Display for GapColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Smallest level above `maturity` whose demand the current gap of `id` fails.
pub fn first_blocking_level(
    assessment: &Assessment,
    id: SubCharacteristicId,
    maturity: u8,
    model: &QualityModel,
) -> Option<u8> {
    let gap = assessment.gap(id);
    (maturity + 1..=MAX_LEVEL).find(|&l| !model.demand(id, l).is_met_by(gap))
}

/// Colors every sub-characteristic of the model.
pub fn classify_gaps(
    assessment: &Assessment,
    model: &QualityModel,
    required: u8,
) -> BTreeMap<SubCharacteristicId, GapColor> {
    let maturity = maturity_level(assessment, model);
    model
        .ids()
        .map(|id| {
            let color = if assessment.gap(id) == GapLevel::NoGap || maturity == MAX_LEVEL {
                GapColor::Green
            } else {
                match first_blocking_level(assessment, id, maturity, model) {
                    Some(l) if l == maturity + 1 => GapColor::Red,
                    Some(l) if l <= required => GapColor::Orange,
                    Some(_) => GapColor::Yellow,
                    // Only reachable for models without a Full level-5 demand.
                    None => GapColor::Yellow,
                }
            };
            (id, color)
        })
        .collect()
}

// ============================================================================
// Recommendations and results
// ============================================================================

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recommendation {
    pub sub_characteristic: SubCharacteristicId,
    pub color: GapColor,
    pub reason: String,
    pub remediation: String,
}

/// One entry per non-green row, most urgent color first, then catalog order.
pub fn recommendations(
    assessment: &Assessment,
    colors: &BTreeMap<SubCharacteristicId, GapColor>,
    model: &QualityModel,
) -> Vec<Recommendation> {
    let mut out: Vec<Recommendation> = colors
        .iter()
        .filter(|(_, c)| **c != GapColor::Green)
        .map(|(id, color)| Recommendation {
            sub_characteristic: *id,
            color: *color,
            reason: assessment
                .gaps
                .get(id)
                .map(|e| e.reason.clone())
                .unwrap_or_default(),
            remediation: model.remediation(*id).to_string(),
        })
        .collect();
    out.sort_by_key(|r| (r.color, r.sub_characteristic.index()));
    out
}

/// Everything a report needs, computed once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessmentResult {
    pub assessment: Assessment,
    pub quality_score: u8,
    pub characteristic_scores: BTreeMap<Characteristic, u8>,
    pub maturity: u8,
    pub required_maturity: u8,
    pub colors: BTreeMap<SubCharacteristicId, GapColor>,
    pub recommendations: Vec<Recommendation>,
}

impl AssessmentResult {
    pub fn color(&self, id: SubCharacteristicId) -> GapColor {
        self.colors.get(&id).copied().unwrap_or(GapColor::Green)
    }
}

/// Scores an assessment against a model.
pub fn evaluate(assessment: Assessment, model: &QualityModel) -> AssessmentResult {
    let required = required_maturity(&assessment.criticality);
    let colors = classify_gaps(&assessment, model, required);
    let recs = recommendations(&assessment, &colors, model);
    AssessmentResult {
        quality_score: quality_score(&assessment, model),
        characteristic_scores: characteristic_scores(&assessment, model),
        maturity: maturity_level(&assessment, model),
        required_maturity: required,
        colors,
        recommendations: recs,
        assessment,
    }
}
