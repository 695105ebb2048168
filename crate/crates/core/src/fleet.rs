//! Fleet views over stored assessments: monthly score distributions,
//! per-sub-characteristic compliance between two cohorts, and per-system
//! trajectories, as CSV tables and SVG charts.

use crate::model::{GapLevel, SubCharacteristicId};
use crate::report::escape;
use crate::scoring::AssessmentResult;
use crate::stats::percentile_sorted;
use crate::store::HistoryRow;
use chrono::NaiveDate;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

pub const DISTRIBUTION_FILE: &str = "distribution.csv";
pub const COMPLIANCE_FILE: &str = "compliance.csv";
pub const TREND_FILE: &str = "trend.svg";
pub const COMPLIANCE_CHART_FILE: &str = "compliance.svg";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FleetError {
    #[error("no assessments to aggregate")]
    EmptyHistory,
    #[error("the {0} cohort is empty")]
    EmptyCohort(&'static str),
}

/// Five-number summary of the quality scores of one month.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionSummary {
    pub period: String,
    pub count: usize,
    pub min: u8,
    pub p25: u8,
    pub median: u8,
    pub p75: u8,
    pub max: u8,
}

impl DistributionSummary {
    /// Summarizes a non-empty sample with nearest-rank quantiles.
    pub fn from_scores(period: impl Into<String>, scores: &[u8]) -> Option<Self> {
        let mut sorted = scores.to_vec();
        sorted.sort_unstable();
        Some(DistributionSummary {
            period: period.into(),
            count: sorted.len(),
            min: *sorted.first()?,
            p25: percentile_sorted(&sorted, 25)?,
            median: percentile_sorted(&sorted, 50)?,
            p75: percentile_sorted(&sorted, 75)?,
            max: *sorted.last()?,
        })
    }
}

fn month(date: NaiveDate) -> String {
    date.format("%Y-%m").to_string()
}

/// One summary per calendar month, counting only the latest assessment of
/// each system within the month.
pub fn score_distribution(rows: &[HistoryRow]) -> Result<Vec<DistributionSummary>, FleetError> {
    if rows.is_empty() {
        return Err(FleetError::EmptyHistory);
    }
    let mut latest: BTreeMap<(String, &str, &str), &HistoryRow> = BTreeMap::new();
    for row in rows {
        let key = (month(row.date), row.team.as_str(), row.system.as_str());
        match latest.get(&key) {
            Some(prev) if (prev.date, prev.quality_score) >= (row.date, row.quality_score) => {}
            _ => {
                latest.insert(key, row);
            }
        }
    }
    let mut by_month: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    for ((period, _, _), row) in latest {
        by_month.entry(period).or_default().push(row.quality_score);
    }
    Ok(by_month
        .into_iter()
        .filter_map(|(period, scores)| DistributionSummary::from_scores(period, &scores))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplianceRow {
    pub sub_characteristic: SubCharacteristicId,
    pub fraction_no_gap_before: f64,
    pub fraction_no_gap_after: f64,
}

fn no_gap_fraction(cohort: &[AssessmentResult], id: SubCharacteristicId) -> f64 {
    let hits = cohort
        .iter()
        .filter(|r| r.assessment.gap(id) == GapLevel::NoGap)
        .count();
    hits as f64 / cohort.len() as f64
}

/// Share of each cohort with no gap, one row per sub-characteristic in
/// catalog order.
pub fn compliance_by_subcharacteristic(
    before: &[AssessmentResult],
    after: &[AssessmentResult],
) -> Result<Vec<ComplianceRow>, FleetError> {
    if before.is_empty() {
        return Err(FleetError::EmptyCohort("before"));
    }
    if after.is_empty() {
        return Err(FleetError::EmptyCohort("after"));
    }
    Ok(SubCharacteristicId::ALL
        .into_iter()
        .map(|id| ComplianceRow {
            sub_characteristic: id,
            fraction_no_gap_before: no_gap_fraction(before, id),
            fraction_no_gap_after: no_gap_fraction(after, id),
        })
        .collect())
}

/// Latest assessment per (team, system) among those accepted by `keep`.
pub fn latest_per_system<'a>(
    results: impl IntoIterator<Item = &'a AssessmentResult>,
    keep: impl Fn(NaiveDate) -> bool,
) -> Vec<AssessmentResult> {
    let mut latest: BTreeMap<(&str, &str), &AssessmentResult> = BTreeMap::new();
    for r in results {
        let a = &r.assessment;
        if !keep(a.date) {
            continue;
        }
        let key = (a.team.as_str(), a.system_id.as_str());
        if latest.get(&key).is_none_or(|prev| prev.assessment.date < a.date) {
            latest.insert(key, r);
        }
    }
    latest.into_values().cloned().collect()
}

pub fn distribution_csv(rows: &[DistributionSummary]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8 csv")
}

pub fn compliance_csv(rows: &[ComplianceRow]) -> String {
    let mut out = String::from("sub_characteristic,fraction_no_gap_before,fraction_no_gap_after\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{:.4},{:.4}",
            row.sub_characteristic, row.fraction_no_gap_before, row.fraction_no_gap_after
        );
    }
    out
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

fn fmt2(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.2}")
}

/// Marker element for a maturity level: 0 cross, 1 circle, 2 square,
/// 3 triangle, 4 diamond, 5 star.
pub fn maturity_glyph(level: u8, x: f64, y: f64, color: &str) -> String {
    let s = 5.0;
    let poly = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|(dx, dy)| format!("{},{}", fmt2(x + dx), fmt2(y + dy)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let attrs = format!("class=\"marker m{level}\" data-maturity=\"{level}\"");
    match level {
        0 => format!(
            r#"<path {attrs} d="M{} {} L{} {} M{} {} L{} {}" stroke="{color}" stroke-width="2" fill="none"/>"#,
            fmt2(x - s),
            fmt2(y - s),
            fmt2(x + s),
            fmt2(y + s),
            fmt2(x - s),
            fmt2(y + s),
            fmt2(x + s),
            fmt2(y - s)
        ),
        1 => format!(
            r#"<circle {attrs} cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
            fmt2(x),
            fmt2(y),
            fmt2(s)
        ),
        2 => format!(
            r#"<rect {attrs} x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
            fmt2(x - s),
            fmt2(y - s),
            fmt2(2.0 * s),
            fmt2(2.0 * s)
        ),
        3 => format!(
            r#"<polygon {attrs} points="{}" fill="{color}"/>"#,
            poly(&[(0.0, -s - 1.0), (s + 1.0, s), (-s - 1.0, s)])
        ),
        4 => format!(
            r#"<polygon {attrs} points="{}" fill="{color}"/>"#,
            poly(&[(0.0, -s - 1.0), (s + 1.0, 0.0), (0.0, s + 1.0), (-s - 1.0, 0.0)])
        ),
        _ => {
            let pts: Vec<(f64, f64)> = (0..10)
                .map(|i| {
                    let r = if i % 2 == 0 { s + 2.0 } else { (s + 2.0) * 0.45 };
                    let a = (-90.0 + 36.0 * i as f64).to_radians();
                    (r * a.cos(), r * a.sin())
                })
                .collect();
            format!(r#"<polygon {attrs} points="{}" fill="{color}"/>"#, poly(&pts))
        }
    }
}

const TREND_WIDTH: f64 = 720.0;
const TREND_HEIGHT: f64 = 380.0;
const MARGIN_LEFT: f64 = 50.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 40.0;
const LEGEND_WIDTH: f64 = 200.0;

fn y_axis(svg: &mut String, plot_h: f64, right: f64, suffix: &str) {
    for tick in [0u32, 25, 50, 75, 100] {
        let y = MARGIN_TOP + plot_h * (1.0 - f64::from(tick) / 100.0);
        let _ = writeln!(
            svg,
            r##"  <line class="tick" x1="{}" y1="{y}" x2="{right}" y2="{y}" stroke="#e0e0e0"/>"##,
            MARGIN_LEFT,
            y = fmt2(y),
            right = fmt2(right)
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" text-anchor="end" font-size="11">{tick}{suffix}</text>"#,
            fmt2(MARGIN_LEFT - 6.0),
            fmt2(y + 4.0)
        );
    }
}

/// Quality score per assessment iteration, one polyline per system, with
/// markers encoding maturity.
pub fn render_trend_chart(rows: &[HistoryRow]) -> String {
    let mut systems: BTreeMap<(&str, &str), Vec<&HistoryRow>> = BTreeMap::new();
    for row in rows {
        systems
            .entry((row.team.as_str(), row.system.as_str()))
            .or_default()
            .push(row);
    }
    for points in systems.values_mut() {
        points.sort_by_key(|r| (r.date, r.quality_score, r.maturity));
    }
    let iterations = systems.values().map(Vec::len).max().unwrap_or(0);
    let plot_w = TREND_WIDTH - MARGIN_LEFT - LEGEND_WIDTH - 20.0;
    let plot_h = TREND_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x_of = |i: usize| {
        if iterations <= 1 {
            MARGIN_LEFT + plot_w / 2.0
        } else {
            MARGIN_LEFT + plot_w * i as f64 / (iterations - 1) as f64
        }
    };
    let y_of = |score: u8| MARGIN_TOP + plot_h * (1.0 - f64::from(score) / 100.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" class="trend" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#,
        w = TREND_WIDTH,
        h = TREND_HEIGHT
    );
    y_axis(&mut svg, plot_h, MARGIN_LEFT + plot_w, "");
    for i in 0..iterations {
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" text-anchor="middle" font-size="11">{}</text>"#,
            fmt2(x_of(i)),
            fmt2(MARGIN_TOP + plot_h + 16.0),
            i + 1
        );
    }
    let _ = writeln!(
        svg,
        r#"  <text x="{}" y="{}" text-anchor="middle" font-size="12">Iteration</text>"#,
        fmt2(MARGIN_LEFT + plot_w / 2.0),
        fmt2(TREND_HEIGHT - 6.0)
    );

    let legend_x = TREND_WIDTH - LEGEND_WIDTH;
    for (k, ((team, system), points)) in systems.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let coords = points
            .iter()
            .enumerate()
            .map(|(i, r)| format!("{},{}", fmt2(x_of(i)), fmt2(y_of(r.quality_score))))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            svg,
            r#"  <polyline class="system" data-system="{}" points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            escape(system)
        );
        for (i, r) in points.iter().enumerate() {
            let _ = writeln!(svg, "  {}", maturity_glyph(r.maturity, x_of(i), y_of(r.quality_score), color));
        }
        let ly = MARGIN_TOP + 10.0 + 18.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"  <g class="legend-entry"><rect x="{}" y="{}" width="12" height="4" fill="{color}"/><text x="{}" y="{}" font-size="11">{} / {}</text></g>"#,
            fmt2(legend_x),
            fmt2(ly - 4.0),
            fmt2(legend_x + 18.0),
            fmt2(ly + 1.0),
            escape(team),
            escape(system)
        );
    }
    let base = MARGIN_TOP + 20.0 + 18.0 * systems.len() as f64;
    let _ = writeln!(
        svg,
        r#"  <text x="{}" y="{}" font-size="11" font-weight="bold">Maturity</text>"#,
        fmt2(legend_x),
        fmt2(base)
    );
    for level in 0..=5u8 {
        let y = base + 16.0 * f64::from(level + 1);
        let _ = writeln!(svg, "  {}", maturity_glyph(level, legend_x + 6.0, y - 4.0, "#444444"));
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" font-size="11">level {level}</text>"#,
            fmt2(legend_x + 18.0),
            fmt2(y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

const GROUP_WIDTH: f64 = 28.0;
const BAR_WIDTH: f64 = 11.0;
const COMPLIANCE_PLOT_HEIGHT: f64 = 260.0;
const LABEL_SPACE: f64 = 130.0;

/// Grouped bars per sub-characteristic: before on the left, after on the right.
pub fn render_compliance_chart(rows: &[ComplianceRow]) -> String {
    let plot_w = GROUP_WIDTH * rows.len() as f64;
    let width = MARGIN_LEFT + plot_w + 120.0;
    let height = MARGIN_TOP + COMPLIANCE_PLOT_HEIGHT + LABEL_SPACE;
    let bottom = MARGIN_TOP + COMPLIANCE_PLOT_HEIGHT;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" class="compliance" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#,
        w = fmt2(width),
        h = fmt2(height)
    );
    y_axis(&mut svg, COMPLIANCE_PLOT_HEIGHT, MARGIN_LEFT + plot_w, "%");
    for (k, row) in rows.iter().enumerate() {
        let gx = MARGIN_LEFT + GROUP_WIDTH * k as f64 + 3.0;
        for (offset, class, fraction, color) in [
            (0.0, "before", row.fraction_no_gap_before, "#9ecae1"),
            (BAR_WIDTH, "after", row.fraction_no_gap_after, "#08519c"),
        ] {
            let h = COMPLIANCE_PLOT_HEIGHT * fraction.clamp(0.0, 1.0);
            let _ = writeln!(
                svg,
                r#"  <rect class="bar {class}" data-sub="{}" x="{}" y="{}" width="{}" height="{}" fill="{color}"/>"#,
                row.sub_characteristic,
                fmt2(gx + offset),
                fmt2(bottom - h),
                fmt2(BAR_WIDTH),
                fmt2(h)
            );
        }
        let lx = gx + BAR_WIDTH;
        let ly = bottom + 8.0;
        let _ = writeln!(
            svg,
            r#"  <text x="{x}" y="{y}" font-size="10" text-anchor="end" transform="rotate(-60 {x} {y})">{}</text>"#,
            row.sub_characteristic.label(),
            x = fmt2(lx),
            y = fmt2(ly)
        );
    }
    let lx = MARGIN_LEFT + plot_w + 16.0;
    for (k, (label, color)) in [("before", "#9ecae1"), ("after", "#08519c")].into_iter().enumerate() {
        let y = MARGIN_TOP + 10.0 + 18.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"  <g class="legend-entry"><rect x="{}" y="{}" width="12" height="12" fill="{color}"/><text x="{}" y="{}" font-size="11">{label}</text></g>"#,
            fmt2(lx),
            fmt2(y - 10.0),
            fmt2(lx + 18.0),
            fmt2(y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}
