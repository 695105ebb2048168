//! Versioned on-disk assessments.
//!
//! Each evaluation lands in `<root>/<team>/<system>/<YYYY-MM-DD>/` with
//! three files: the gaps CSV, a canonical JSON snapshot, and the rendered
//! report. The snapshot embeds the model, so it alone regenerates the
//! report byte for byte.

use crate::assessment::serialize_gaps_csv;
use crate::canonical::to_canonical_json;
use crate::model::QualityModel;
use crate::report::{render_report, ReportDocument, REPORT_FILE};
use crate::scoring::AssessmentResult;
use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const SNAPSHOT_VERSION: u32 = 1;
pub const SNAPSHOT_FILE: &str = "snapshot.json";
pub const GAPS_FILE: &str = "gaps.csv";
const DATE_FORMAT: &str = "%Y-%m-%d";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("not found: {0}")]
    NotFound(PathBuf),
    #[error("corrupted snapshot {path}: {message}")]
    Corrupt { path: PathBuf, message: String },
    #[error("invalid identity `{0}`: {1}")]
    InvalidIdentity(String, &'static str),
    #[error("cannot render report: {0}")]
    Render(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Original name and the directory name it was stored under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameMapping {
    pub original: String,
    pub directory: String,
}

/// Turns an identity into a single path component: path separators and
/// whitespace become underscores.
pub fn sanitize_component(name: &str) -> Result<String, StoreError> {
    let trimmed = name.trim();
    if trimmed.is_empty() {
        return Err(StoreError::InvalidIdentity(name.to_string(), "empty"));
    }
    let out: String = trimmed
        .chars()
        .map(|c| {
            if c == '/' || c == '\\' || c.is_whitespace() {
                '_'
            } else {
                c
            }
        })
        .collect();
    if out == "." || out == ".." {
        return Err(StoreError::InvalidIdentity(name.to_string(), "reserved path component"));
    }
    if out.chars().any(|c| c == '\0' || std::path::is_separator(c)) {
        return Err(StoreError::InvalidIdentity(name.to_string(), "contains a path separator"));
    }
    Ok(out)
}

/// On-disk snapshot document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub snapshot_version: u32,
    pub team: NameMapping,
    pub system: NameMapping,
    pub model_fingerprint: String,
    pub model: QualityModel,
    pub result: AssessmentResult,
}

/// Where an assessment was written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredAssessment {
    pub root: PathBuf,
    pub dir: PathBuf,
    pub team: NameMapping,
    pub system: NameMapping,
    pub date: NaiveDate,
}

impl StoredAssessment {
    pub fn gaps_path(&self) -> PathBuf {
        self.dir.join(GAPS_FILE)
    }
    pub fn snapshot_path(&self) -> PathBuf {
        self.dir.join(SNAPSHOT_FILE)
    }
    pub fn report_path(&self) -> PathBuf {
        self.dir.join(REPORT_FILE)
    }
}

/// Writes via a sibling temp file and rename so readers never see a torn file.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Persists a result, its gaps CSV and its report. Re-persisting the same
/// identity and date overwrites with identical bytes.
pub fn persist_assessment(
    root: &Path,
    result: &AssessmentResult,
    model: &QualityModel,
) -> Result<StoredAssessment, StoreError> {
    let a = &result.assessment;
    let team = NameMapping {
        original: a.team.clone(),
        directory: sanitize_component(&a.team)?,
    };
    let system = NameMapping {
        original: a.system_id.clone(),
        directory: sanitize_component(&a.system_id)?,
    };
    let dir = root
        .join(&team.directory)
        .join(&system.directory)
        .join(a.date.format(DATE_FORMAT).to_string());
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;

    let report = render_report(result, model).map_err(|e| StoreError::Render(e.to_string()))?;
    let snapshot = Snapshot {
        snapshot_version: SNAPSHOT_VERSION,
        team: team.clone(),
        system: system.clone(),
        model_fingerprint: model.fingerprint(),
        model: model.clone(),
        result: result.clone(),
    };
    let json = to_canonical_json(&snapshot).map_err(|e| StoreError::Render(e.to_string()))?;

    let stored = StoredAssessment {
        root: root.to_path_buf(),
        dir,
        team,
        system,
        date: a.date,
    };
    write_atomic(&stored.gaps_path(), serialize_gaps_csv(a).as_bytes())?;
    write_atomic(&stored.snapshot_path(), json.as_bytes())?;
    write_atomic(&stored.report_path(), report.html.as_bytes())?;
    Ok(stored)
}

/// A snapshot read back from disk.
#[derive(Debug, Clone)]
pub struct LoadedAssessment {
    pub dir: PathBuf,
    pub snapshot: Snapshot,
    pub warnings: Vec<String>,
}

impl LoadedAssessment {
    pub fn result(&self) -> &AssessmentResult {
        &self.snapshot.result
    }

    pub fn model(&self) -> &QualityModel {
        &self.snapshot.model
    }

    /// Renders the report again from the snapshot alone.
    pub fn rerender(&self) -> Result<ReportDocument, StoreError> {
        render_report(&self.snapshot.result, &self.snapshot.model)
            .map_err(|e| StoreError::Render(e.to_string()))
    }

    /// Whether the stored `report.html` equals a fresh render.
    pub fn report_matches(&self) -> Result<bool, StoreError> {
        let path = self.dir.join(REPORT_FILE);
        let stored = fs::read(&path).map_err(io_err(&path))?;
        Ok(stored == self.rerender()?.html.into_bytes())
    }
}

fn read_snapshot(dir: &Path) -> Result<LoadedAssessment, StoreError> {
    let path = dir.join(SNAPSHOT_FILE);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Err(StoreError::NotFound(path)),
        Err(e) => return Err(io_err(&path)(e)),
    };
    let corrupt = |message: String| StoreError::Corrupt {
        path: path.clone(),
        message,
    };
    let snapshot: Snapshot = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if snapshot.snapshot_version != SNAPSHOT_VERSION {
        return Err(corrupt(format!(
            "unsupported snapshot_version {}",
            snapshot.snapshot_version
        )));
    }
    if snapshot.model.fingerprint() != snapshot.model_fingerprint {
        return Err(corrupt("embedded model does not match its fingerprint".into()));
    }
    Ok(LoadedAssessment {
        dir: dir.to_path_buf(),
        snapshot,
        warnings: Vec::new(),
    })
}

/// Sorted child directories of `dir`; a missing directory yields nothing.
fn child_dirs(dir: &Path) -> Result<Vec<(String, PathBuf)>, StoreError> {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(dir)(e)),
    };
    let mut out = Vec::new();
    for entry in entries {
        let entry = entry.map_err(io_err(dir))?;
        let path = entry.path();
        if path.is_dir() {
            if let Some(name) = entry.file_name().to_str() {
                out.push((name.to_string(), path));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn is_date_dir(name: &str) -> bool {
    NaiveDate::parse_from_str(name, DATE_FORMAT).is_ok() && name.len() == 10
}

/// Loads one stored assessment; `date: None` picks the latest date.
///
/// When `expected` is given and its fingerprint differs from the one in
/// the snapshot, a warning is attached rather than failing.
pub fn load_assessment(
    root: &Path,
    team: &str,
    system: &str,
    date: Option<NaiveDate>,
    expected: Option<&QualityModel>,
) -> Result<LoadedAssessment, StoreError> {
    let system_dir = root
        .join(sanitize_component(team)?)
        .join(sanitize_component(system)?);
    let dir = match date {
        Some(d) => system_dir.join(d.format(DATE_FORMAT).to_string()),
        None => child_dirs(&system_dir)?
            .into_iter()
            .filter(|(name, _)| is_date_dir(name))
            .map(|(_, p)| p)
            .next_back()
            .ok_or_else(|| StoreError::NotFound(system_dir.clone()))?,
    };
    if !dir.is_dir() {
        return Err(StoreError::NotFound(dir));
    }
    let mut loaded = read_snapshot(&dir)?;
    if let Some(model) = expected {
        let fp = model.fingerprint();
        if fp != loaded.snapshot.model_fingerprint {
            loaded.warnings.push(format!(
                "model fingerprint mismatch: snapshot {} vs supplied {}",
                loaded.snapshot.model_fingerprint, fp
            ));
        }
    }
    Ok(loaded)
}

/// Every snapshot under `root` (optionally filtered), in
/// (team, system, date) order, plus one warning per unreadable entry.
pub fn scan(
    root: &Path,
    team: Option<&str>,
    system: Option<&str>,
) -> Result<(Vec<LoadedAssessment>, Vec<String>), StoreError> {
    if !root.is_dir() {
        return Err(StoreError::NotFound(root.to_path_buf()));
    }
    let team_filter = team.map(sanitize_component).transpose()?;
    let system_filter = system.map(sanitize_component).transpose()?;
    let mut loaded = Vec::new();
    let mut warnings = Vec::new();
    for (team_name, team_dir) in child_dirs(root)? {
        if team_filter.as_ref().is_some_and(|t| *t != team_name) {
            continue;
        }
        for (system_name, system_dir) in child_dirs(&team_dir)? {
            if system_filter.as_ref().is_some_and(|s| *s != system_name) {
                continue;
            }
            for (date_name, date_dir) in child_dirs(&system_dir)? {
                if !is_date_dir(&date_name) {
                    continue;
                }
                match read_snapshot(&date_dir) {
                    Ok(l) => loaded.push(l),
                    Err(e) => warnings.push(e.to_string()),
                }
            }
        }
    }
    loaded.sort_by(|a, b| {
        let ka = (&a.snapshot.result.assessment.team, &a.snapshot.result.assessment.system_id, a.snapshot.result.assessment.date);
        let kb = (&b.snapshot.result.assessment.team, &b.snapshot.result.assessment.system_id, b.snapshot.result.assessment.date);
        ka.cmp(&kb)
    });
    Ok((loaded, warnings))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub team: String,
    pub system: String,
    pub date: NaiveDate,
    pub quality_score: u8,
    pub maturity: u8,
}

impl From<&LoadedAssessment> for HistoryRow {
    fn from(l: &LoadedAssessment) -> Self {
        let r = &l.snapshot.result;
        HistoryRow {
            team: r.assessment.team.clone(),
            system: r.assessment.system_id.clone(),
            date: r.assessment.date,
            quality_score: r.quality_score,
            maturity: r.maturity,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct History {
    pub rows: Vec<HistoryRow>,
    pub warnings: Vec<String>,
}

/// Score and maturity per stored assessment, read straight from snapshots.
/// An empty or missing root yields no rows.
pub fn history(root: &Path, team: Option<&str>, system: Option<&str>) -> Result<History, StoreError> {
    if !root.exists() {
        return Ok(History::default());
    }
    let (loaded, warnings) = scan(root, team, system)?;
    Ok(History {
        rows: loaded.iter().map(HistoryRow::from).collect(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assessment::{Assessment, GapEntry};
    use crate::model::{GapLevel, SubCharacteristicId};
    use crate::scoring::{evaluate, BusinessCriticality, CriticalityLevel};

    fn result(team: &str, system: &str, date: (i32, u32, u32), large: usize) -> AssessmentResult {
        let a = Assessment {
            team: team.into(),
            system_id: system.into(),
            family_members: vec![system.into()],
            date: NaiveDate::from_ymd_opt(date.0, date.1, date.2).unwrap(),
            criticality: BusinessCriticality::manual(CriticalityLevel::ProductionCritical),
            gaps: SubCharacteristicId::ALL
                .into_iter()
                .map(|id| {
                    let g = if id.index() < large { GapLevel::Large } else { GapLevel::NoGap };
                    (id, GapEntry::new(g, "r"))
                })
                .collect(),
        };
        evaluate(a, &QualityModel::default())
    }

    #[test]
    fn layout_and_idempotence() {
        let tmp = tempfile::tempdir().unwrap();
        let model = QualityModel::default();
        let r = result("search", "ranker", (2024, 1, 5), 2);
        let s = persist_assessment(tmp.path(), &r, &model).unwrap();
        assert_eq!(s.dir, tmp.path().join("search/ranker/2024-01-05"));
        let mut files: Vec<String> = fs::read_dir(&s.dir)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        files.sort();
        assert_eq!(files, vec!["gaps.csv", "report.html", "snapshot.json"]);

        let before: Vec<Vec<u8>> = files.iter().map(|f| fs::read(s.dir.join(f)).unwrap()).collect();
        persist_assessment(tmp.path(), &r, &model).unwrap();
        let after: Vec<Vec<u8>> = files.iter().map(|f| fs::read(s.dir.join(f)).unwrap()).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn sanitization() {
        assert_eq!(sanitize_component("a/b").unwrap(), "a_b");
        assert_eq!(sanitize_component("my team\\x").unwrap(), "my_team_x");
        assert!(sanitize_component("  ").is_err());
        assert!(sanitize_component("..").is_err());

        let tmp = tempfile::tempdir().unwrap();
        let r = result("a/b", "sys one", (2024, 1, 5), 0);
        let s = persist_assessment(tmp.path(), &r, &QualityModel::default()).unwrap();
        assert_eq!(s.team, NameMapping { original: "a/b".into(), directory: "a_b".into() });
        assert!(tmp.path().join("a_b/sys_one/2024-01-05/snapshot.json").is_file());
        let loaded = load_assessment(tmp.path(), "a/b", "sys one", None, None).unwrap();
        assert_eq!(loaded.result().assessment.team, "a/b");
    }

    #[test]
    fn load_latest_and_rerender() {
        let tmp = tempfile::tempdir().unwrap();
        let model = QualityModel::default();
        persist_assessment(tmp.path(), &result("t", "s", (2024, 1, 5), 3), &model).unwrap();
        persist_assessment(tmp.path(), &result("t", "s", (2024, 3, 1), 1), &model).unwrap();
        let l = load_assessment(tmp.path(), "t", "s", None, Some(&model)).unwrap();
        assert_eq!(l.result().assessment.date, NaiveDate::from_ymd_opt(2024, 3, 1).unwrap());
        assert!(l.warnings.is_empty());
        assert!(l.report_matches().unwrap());
        assert_eq!(l.result(), &result("t", "s", (2024, 3, 1), 1));
    }

    #[test]
    fn fingerprint_mismatch_warns() {
        let tmp = tempfile::tempdir().unwrap();
        let model = QualityModel::default();
        persist_assessment(tmp.path(), &result("t", "s", (2024, 1, 5), 0), &model).unwrap();
        let mut other = model.clone();
        other.row_mut(SubCharacteristicId::Testability).unwrap().remediation = "x".into();
        let l = load_assessment(tmp.path(), "t", "s", None, Some(&other)).unwrap();
        assert_eq!(l.warnings.len(), 1);
    }

    #[test]
    fn missing_directory_is_not_found() {
        let tmp = tempfile::tempdir().unwrap();
        let err = load_assessment(tmp.path(), "nobody", "nothing", None, None).unwrap_err();
        assert!(matches!(&err, StoreError::NotFound(p) if p.ends_with("nobody/nothing")), "{err}");
        let err = load_assessment(
            tmp.path(),
            "nobody",
            "nothing",
            NaiveDate::from_ymd_opt(2024, 1, 1),
            None,
        )
        .unwrap_err();
        assert!(err.to_string().contains("2024-01-01"));
    }

    #[test]
    fn history_rows_and_fault_tolerance() {
        let tmp = tempfile::tempdir().unwrap();
        assert!(history(tmp.path(), None, None).unwrap().rows.is_empty());
        let model = QualityModel::default();
        for (d, large) in [((2024, 3, 1), 1), ((2024, 1, 5), 5), ((2024, 2, 1), 3)] {
            persist_assessment(tmp.path(), &result("t", "s", d, large), &model).unwrap();
        }
        let h = history(tmp.path(), None, None).unwrap();
        let dates: Vec<String> = h.rows.iter().map(|r| r.date.to_string()).collect();
        assert_eq!(dates, vec!["2024-01-05", "2024-02-01", "2024-03-01"]);
        assert_eq!(h.rows[0].quality_score, 80);

        fs::write(tmp.path().join("t/s/2024-02-01/snapshot.json"), "{ broken").unwrap();
        let h = history(tmp.path(), Some("t"), None).unwrap();
        assert_eq!(h.rows.len(), 2);
        assert_eq!(h.warnings.len(), 1);
        assert!(h.warnings[0].contains("2024-02-01"));

        fs::remove_dir_all(tmp.path().join("t/s/2024-01-05")).unwrap();
        assert_eq!(history(tmp.path(), None, None).unwrap().rows.len(), 1);
        assert!(history(tmp.path(), Some("other"), None).unwrap().rows.is_empty());
    }
}
