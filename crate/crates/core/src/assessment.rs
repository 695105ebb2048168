//! One evaluation of a system (or system family): a gap and reason per
//! sub-characteristic, plus identity.

use crate::model::{GapLevel, QualityModel, SubCharacteristicId};
use crate::scoring::BusinessCriticality;
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub const CSV_HEADER: [&str; 3] = ["sub_characteristic", "gap", "reason"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapEntry {
    pub gap: GapLevel,
    pub reason: String,
}

impl GapEntry {
    pub fn new(gap: GapLevel, reason: impl Into<String>) -> Self {
        GapEntry {
            gap,
            reason: reason.into(),
        }
    }
}

/// Who and when an assessment describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssessmentHeader {
    pub team: String,
    pub system_id: String,
    /// Systems sharing this evaluation. Empty means just `system_id`.
    pub family_members: Vec<String>,
    pub date: NaiveDate,
    pub criticality: BusinessCriticality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assessment {
    pub team: String,
    pub system_id: String,
    pub family_members: Vec<String>,
    pub date: NaiveDate,
    pub criticality: BusinessCriticality,
    pub gaps: BTreeMap<SubCharacteristicId, GapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IssueKind {
    BadHeader(String),
    WrongFieldCount(usize),
    UnknownId(String),
    DuplicateId(SubCharacteristicId),
    MissingId(SubCharacteristicId),
    IllegalSmallGap(SubCharacteristicId),
    MalformedGap(String),
    Csv(String),
    EmptyFamily,
    SystemNotInFamily,
}

/// A problem found while building an assessment; `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub line: Option<u64>,
    pub kind: IssueKind,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        match &self.kind {
            IssueKind::BadHeader(found) => write!(
                f,
                "expected header `{}`, found `{found}`",
                CSV_HEADER.join(",")
            ),
            IssueKind::WrongFieldCount(n) => write!(f, "expected 3 fields, found {n}"),
            IssueKind::UnknownId(id) => write!(f, "unknown sub-characteristic: {id}"),
            IssueKind::DuplicateId(id) => write!(f, "duplicate sub-characteristic: {id}"),
            IssueKind::MissingId(id) => write!(f, "missing sub-characteristic: {id}"),
            IssueKind::IllegalSmallGap(id) => write!(
                f,
                "small gap illegal for {id} (it has no minimal requirement)"
            ),
            IssueKind::MalformedGap(tok) => write!(
                f,
                "malformed gap token `{tok}` (expected no/small/large or 0/1/2)"
            ),
            IssueKind::Csv(msg) => write!(f, "{msg}"),
            IssueKind::EmptyFamily => write!(f, "family_members must not be empty"),
            IssueKind::SystemNotInFamily => write!(f, "system_id must be one of family_members"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid assessment:\n{}", render(.0))]
pub struct AssessmentError(pub Vec<Issue>);

fn render(issues: &[Issue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl AssessmentError {
    pub fn issues(&self) -> &[Issue] {
        &self.0
    }
}

fn issue(line: Option<u64>, kind: IssueKind) -> Issue {
    Issue { line, kind }
}

impl Assessment {
    /// Assembles an assessment and checks it against `model`.
    pub fn new(
        header: AssessmentHeader,
        gaps: BTreeMap<SubCharacteristicId, GapEntry>,
        model: &QualityModel,
    ) -> Result<Self, AssessmentError> {
        let mut family = header.family_members;
        if family.is_empty() {
            family.push(header.system_id.clone());
        }
        let assessment = Assessment {
            team: header.team,
            system_id: header.system_id,
            family_members: family,
            date: header.date,
            criticality: header.criticality,
            gaps,
        };
        let issues = assessment.check(model);
        if issues.is_empty() {
            Ok(assessment)
        } else {
            Err(AssessmentError(issues))
        }
    }

    /// Structural problems of this assessment relative to `model`.
    pub fn check(&self, model: &QualityModel) -> Vec<Issue> {
        let mut issues = Vec::new();
        if self.family_members.is_empty() {
            issues.push(issue(None, IssueKind::EmptyFamily));
        } else if !self.family_members.contains(&self.system_id) {
            issues.push(issue(None, IssueKind::SystemNotInFamily));
        }
        for id in model.ids() {
            match self.gaps.get(&id) {
                None => issues.push(issue(None, IssueKind::MissingId(id))),
                Some(e) if e.gap == GapLevel::Small && !model.has_minimal_requirement(id) => {
                    issues.push(issue(None, IssueKind::IllegalSmallGap(id)))
                }
                Some(_) => {}
            }
        }
        for id in self.gaps.keys() {
            if !model.contains(*id) {
                issues.push(issue(None, IssueKind::UnknownId(id.to_string())));
            }
        }
        issues
    }

    pub fn gap(&self, id: SubCharacteristicId) -> GapLevel {
        self.gaps.get(&id).map(|e| e.gap).unwrap_or(GapLevel::Large)
    }

    pub fn header(&self) -> AssessmentHeader {
        AssessmentHeader {
            team: self.team.clone(),
            system_id: self.system_id.clone(),
            family_members: self.family_members.clone(),
            date: self.date,
            criticality: self.criticality.clone(),
        }
    }
}

/// Reads a gaps CSV (`sub_characteristic,gap,reason`, any row order).
///
/// All problems are collected, each tagged with its line where one exists.
pub fn parse_assessment(
    csv_text: &str,
    model: &QualityModel,
    header: AssessmentHeader,
) -> Result<Assessment, AssessmentError> {
    let gaps = parse_gaps_csv(csv_text, model)?;
    Assessment::new(header, gaps, model)
}

/// Row-level parse of a gaps CSV, independent of identity.
pub fn parse_gaps_csv(
    csv_text: &str,
    model: &QualityModel,
) -> Result<BTreeMap<SubCharacteristicId, GapEntry>, AssessmentError> {
    let text = csv_text.strip_prefix('\u{feff}').unwrap_or(csv_text);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut issues = Vec::new();
    let mut gaps: BTreeMap<SubCharacteristicId, GapEntry> = BTreeMap::new();
    let mut saw_header = false;

    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map(|p| p.line());
                issues.push(issue(line, IssueKind::Csv(e.to_string())));
                continue;
            }
        };
        let line = record.position().map(|p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if !saw_header {
            saw_header = true;
            let found: Vec<&str> = record.iter().collect();
            if found != CSV_HEADER {
                issues.push(issue(line, IssueKind::BadHeader(found.join(","))));
                return Err(AssessmentError(issues));
            }
            continue;
        }
        if record.len() != 3 {
            issues.push(issue(line, IssueKind::WrongFieldCount(record.len())));
            continue;
        }
        let raw_id = &record[0];
        let Ok(id) = raw_id.parse::<SubCharacteristicId>() else {
            issues.push(issue(line, IssueKind::UnknownId(raw_id.to_string())));
            continue;
        };
        if !model.contains(id) {
            issues.push(issue(line, IssueKind::UnknownId(raw_id.to_string())));
            continue;
        }
        let gap = match record[1].parse::<GapLevel>() {
            Ok(g) => g,
            Err(_) => {
                issues.push(issue(line, IssueKind::MalformedGap(record[1].to_string())));
                continue;
            }
        };
        if gap == GapLevel::Small && !model.has_minimal_requirement(id) {
            issues.push(issue(line, IssueKind::IllegalSmallGap(id)));
            continue;
        }
        if gaps.contains_key(&id) {
            issues.push(issue(line, IssueKind::DuplicateId(id)));
            continue;
        }
        gaps.insert(id, GapEntry::new(gap, &record[2]));
    }

    if !saw_header {
        issues.push(issue(Some(1), IssueKind::BadHeader(String::new())));
        return Err(AssessmentError(issues));
    }
    // Rows rejected above are not reported again as missing.
    let rejected: Vec<SubCharacteristicId> = issues
        .iter()
        .filter_map(|i| match i.kind {
            IssueKind::IllegalSmallGap(id) | IssueKind::DuplicateId(id) => Some(id),
            _ => None,
        })
        .collect();
    for id in model.ids() {
        if !gaps.contains_key(&id) && !rejected.contains(&id) {
            issues.push(issue(None, IssueKind::MissingId(id)));
        }
    }
    if issues.is_empty() {
        Ok(gaps)
    } else {
        Err(AssessmentError(issues))
    }
}

/// Writes the gaps of `assessment` as CSV in catalog order with word tokens.
pub fn serialize_gaps_csv(assessment: &Assessment) -> String {
    gaps_to_csv(&assessment.gaps)
}

/// CSV text for a gap map, in catalog order.
pub fn gaps_to_csv(gaps: &BTreeMap<SubCharacteristicId, GapEntry>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for (id, entry) in gaps {
        writer
            .write_record([id.as_str(), entry.gap.token(), entry.reason.as_str()])
            .expect("in-memory write");
    }
    let bytes = writer.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("csv output is utf-8")
}
