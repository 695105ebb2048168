//! TOML overrides on top of the built-in model.
//!
//! ```toml
//! schema_version = 1
//!
//! [matrix]
//! testability = ["-", "-", "min", "min", "full"]
//!
//! [sub_characteristics.testability]
//! full_requirement = "Test coverage is at least 90%"
//! remediation = "Add tests."
//! ```
//!
//! Version 1 keeps the 25-row catalog fixed: rows can be retexted and their
//! demand cells replaced, but not added or removed.

use super::{validate_model, Characteristic, Demand, QualityModel, SubCharacteristicId, Violation};
use serde::Deserialize;
use std::collections::BTreeMap;

pub const MODEL_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("model config: {location}: {message}")]
    Parse { location: String, message: String },
    #[error("model config violates {} invariant(s):\n{}", .0.len(), render_violations(.0))]
    Invalid(Vec<Violation>),
}

fn render_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| format!("  - {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Raw shape of the config document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    #[serde(default)]
    pub schema_version: Option<u32>,
    #[serde(default)]
    pub sub_characteristics: BTreeMap<String, RowOverride>,
    #[serde(default)]
    pub matrix: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowOverride {
    pub parent: Option<String>,
    pub minimal_requirement: Option<String>,
    pub full_requirement: Option<String>,
    pub reasoning: Option<String>,
    pub remediation: Option<String>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> ModelError {
    ModelError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_id(section: &str, key: &str) -> Result<SubCharacteristicId, ModelError> {
    key.parse()
        .map_err(|_| parse_err(format!("{section}.{key}"), "unknown sub-characteristic"))
}

/// Loads the quality model. `None` yields the built-in default.
pub fn load_quality_model(config: Option<&str>) -> Result<QualityModel, ModelError> {
    let Some(text) = config else {
        return Ok(QualityModel::default());
    };
    let cfg: ModelConfig = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => format!("line {}", line_of(text, span.start)),
            None => "document".to_string(),
        };
        parse_err(location, e.message().to_string())
    })?;
    apply_config(QualityModel::default(), &cfg)
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Applies `cfg` on top of `base` and validates the outcome.
pub fn apply_config(mut base: QualityModel, cfg: &ModelConfig) -> Result<QualityModel, ModelError> {
    if let Some(v) = cfg.schema_version {
        if v != MODEL_SCHEMA_VERSION {
            return Err(parse_err(
                "schema_version",
                format!("unsupported version {v} (expected {MODEL_SCHEMA_VERSION})"),
            ));
        }
    }

    for (key, ov) in &cfg.sub_characteristics {
        let id = parse_id("sub_characteristics", key)?;
        let row = base
            .row_mut(id)
            .ok_or_else(|| parse_err(format!("sub_characteristics.{key}"), "row not in model"))?;
        if let Some(parent) = &ov.parent {
            let parent: Characteristic = parent.parse().map_err(|_| {
                parse_err(
                    format!("sub_characteristics.{key}.parent"),
                    format!("unknown characteristic `{parent}`"),
                )
            })?;
            row.sub.parent = parent;
        }
        if let Some(text) = &ov.minimal_requirement {
            let text = text.trim();
            row.sub.minimal_requirement = (!text.is_empty() && text != "-").then(|| text.to_string());
        }
        if let Some(text) = &ov.full_requirement {
            row.sub.full_requirement = text.clone();
        }
        if let Some(text) = &ov.reasoning {
            row.sub.reasoning = text.clone();
        }
        if let Some(text) = &ov.remediation {
            row.remediation = text.clone();
        }
    }

    for (key, cells) in &cfg.matrix {
        let id = parse_id("matrix", key)?;
        if cells.len() != 5 {
            return Err(parse_err(
                format!("matrix.{key}"),
                format!("expected 5 demand tokens, found {}", cells.len()),
            ));
        }
        let mut demands = [Demand::NoRequirement; 5];
        for (i, token) in cells.iter().enumerate() {
            demands[i] = token
                .parse()
                .map_err(|m: String| parse_err(format!("matrix.{key}[level {}]", i + 1), m))?;
        }
        base.row_mut(id)
            .ok_or_else(|| parse_err(format!("matrix.{key}"), "row not in model"))?
            .demands = demands;
    }

    let violations = validate_model(&base);
    if violations.is_empty() {
        Ok(base)
    } else {
        Err(ModelError::Invalid(violations))
    }
}
