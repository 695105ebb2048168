//! Markdown survey form for the semi-automated assessment path.
//!
//! Each sub-characteristic gets a `### <id>` heading, a checkbox per
//! requirement and a reason line. A filled form converts to gaps:
//! full met gives `no`, only minimal met gives `small`, neither gives `large`.

use crate::assessment::GapEntry;
use crate::model::{Characteristic, GapLevel, QualityModel, SubCharacteristicId};
use std::collections::BTreeMap;
use std::fmt::Write;

const MINIMAL_PREFIX: &str = "Minimal requirement met:";
const FULL_PREFIX: &str = "Full requirement met:";
const REASON_PREFIX: &str = "Reason:";

/// Blank form for every row of `model`, grouped by characteristic.
pub fn render_form(model: &QualityModel) -> String {
    let mut out = String::new();
    out.push_str("# ML system quality questionnaire\n\n");
    out.push_str(
        "Tick `[x]` each requirement the system meets and give a reason for every entry.\n\
         Full met maps to gap `no`, only minimal met to `small`, neither to `large`.\n",
    );
    for c in Characteristic::ALL {
        let rows: Vec<_> = model.members(c).collect();
        if rows.is_empty() {
            continue;
        }
        let _ = write!(out, "\n## {}\n", c.label());
        for row in rows {
            let sub = &row.sub;
            let _ = write!(out, "\n### {}\n\n{}\n\n", sub.id, sub.id.label());
            if let Some(min) = &sub.minimal_requirement {
                let _ = writeln!(out, "- [ ] {MINIMAL_PREFIX} {}", one_line(min));
            }
            let _ = writeln!(out, "- [ ] {FULL_PREFIX} {}", one_line(&sub.full_requirement));
            let _ = writeln!(out, "\n{REASON_PREFIX} ");
        }
    }
    out
}

fn one_line(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("line {0}: unknown sub-characteristic `{1}`")]
    UnknownId(usize, String),
    #[error("line {0}: duplicate entry for {1}")]
    Duplicate(usize, SubCharacteristicId),
    #[error("line {0}: {1} has no minimal requirement")]
    MinimalOnFullOnly(usize, SubCharacteristicId),
    #[error("line {0}: checkbox outside an entry")]
    Orphan(usize),
    #[error("missing entry for {0}")]
    Missing(SubCharacteristicId),
}

#[derive(Default)]
struct Entry {
    minimal: bool,
    full: bool,
    reason: String,
}

fn checkbox(line: &str, prefix: &str) -> Option<bool> {
    let rest = line.strip_prefix("- [")?;
    let (mark, rest) = rest.split_once(']')?;
    if !rest.trim_start().starts_with(prefix) {
        return None;
    }
    Some(mark.trim().eq_ignore_ascii_case("x"))
}

/// Reads a filled form back into gaps. Every problem is reported.
pub fn parse_form(
    text: &str,
    model: &QualityModel,
) -> Result<BTreeMap<SubCharacteristicId, GapEntry>, Vec<FormError>> {
    let mut errors = Vec::new();
    let mut entries: BTreeMap<SubCharacteristicId, Entry> = BTreeMap::new();
    let mut current: Option<SubCharacteristicId> = None;

    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = raw.trim();
        if let Some(id) = line.strip_prefix("### ") {
            let id = id.trim();
            match id.parse::<SubCharacteristicId>() {
                Ok(id) if model.contains(id) => {
                    if let std::collections::btree_map::Entry::Vacant(slot) = entries.entry(id) {
                        slot.insert(Entry::default());
                        current = Some(id);
                    } else {
                        errors.push(FormError::Duplicate(n, id));
                        current = None;
                    }
                }
                _ => {
                    errors.push(FormError::UnknownId(n, id.to_string()));
                    current = None;
                }
            }
            continue;
        }
        if line.starts_with("## ") || line.starts_with("# ") {
            current = None;
            continue;
        }
        let minimal = checkbox(line, MINIMAL_PREFIX);
        let full = checkbox(line, FULL_PREFIX);
        let reason = line.strip_prefix(REASON_PREFIX);
        if minimal.is_none() && full.is_none() && reason.is_none() {
            continue;
        }
        let Some(id) = current else {
            errors.push(FormError::Orphan(n));
            continue;
        };
        let entry = entries.get_mut(&id).expect("current entry exists");
        if let Some(m) = minimal {
            if !model.has_minimal_requirement(id) {
                errors.push(FormError::MinimalOnFullOnly(n, id));
            }
            entry.minimal = m;
        }
        if let Some(f) = full {
            entry.full = f;
        }
        if let Some(r) = reason {
            entry.reason = r.trim().to_string();
        }
    }
    for id in model.ids() {
        if !entries.contains_key(&id) {
            errors.push(FormError::Missing(id));
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(entries
        .into_iter()
        .map(|(id, e)| {
            let gap = if e.full {
                GapLevel::NoGap
            } else if e.minimal {
                GapLevel::Small
            } else {
                GapLevel::Large
            };
            (id, GapEntry::new(gap, e.reason))
        })
        .collect())
}
