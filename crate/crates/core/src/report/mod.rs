//! Self-contained HTML report for one assessment.
//!
//! The page carries inline styles and an inline SVG radar and references
//! nothing external. Output depends only on the result and the model, so
//! the same inputs always give the same bytes.

mod radar;

pub use radar::{
    axis_angle_degrees, axis_point, render_radar, RadarError, CENTER_X, CENTER_Y, RADAR_AXES,
    RADIUS,
};

use crate::model::QualityModel;
use crate::scoring::{AssessmentResult, GapColor};
use chrono::NaiveDate;
use std::fmt::Write;

pub const REPORT_FILE: &str = "report.html";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    pub html: String,
    /// Assessment date, never the wall clock.
    pub generated_at: NaiveDate,
}

/// Minimal HTML/XML text escaping.
pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

fn section_title(color: GapColor) -> &'static str {
    match color {
        GapColor::Red => "Gaps to fill to reach the next maturity level",
        GapColor::Orange => "Gaps to fill to reach the required maturity level",
        GapColor::Yellow => "Gaps to fill for maturity levels above the required one",
        GapColor::Green => "No gaps identified",
    }
}

fn swatch(color: GapColor) -> &'static str {
    match color {
        GapColor::Red => "#d62728",
        GapColor::Orange => "#ff7f0e",
        GapColor::Yellow => "#d4b000",
        GapColor::Green => "#2ca02c",
    }
}

const STYLE: &str = "body{font-family:sans-serif;max-width:960px;margin:2em auto;color:#222;}
h1{margin-bottom:0.2em;}
table.identity td{padding:2px 12px 2px 0;}
dl.summary{display:grid;grid-template-columns:max-content auto;gap:4px 16px;}
dl.summary dt{font-weight:bold;}
section.gaps{border-left:6px solid;padding-left:12px;margin:1.5em 0;}
section.gaps li{margin-bottom:0.8em;}
section.gaps p{margin:0.2em 0;}
.muted{color:#666;}
";

/// Renders the report page.
pub fn render_report(result: &AssessmentResult, model: &QualityModel) -> Result<ReportDocument, RadarError> {
    let a = &result.assessment;
    let radar = render_radar(&result.characteristic_scores)?;
    let mut html = String::new();

    html.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    let _ = writeln!(
        html,
        "<title>ML quality report: {} / {}</title>",
        escape(&a.team),
        escape(&a.system_id)
    );
    let _ = writeln!(html, "<style>\n{STYLE}</style>\n</head>\n<body>");

    // Identity
    html.push_str("<header>\n<h1>ML system quality report</h1>\n<table class=\"identity\">\n");
    let family = a
        .family_members
        .iter()
        .map(|m| escape(m))
        .collect::<Vec<_>>()
        .join(", ");
    for (label, value) in [
        ("Team", escape(&a.team)),
        ("System", escape(&a.system_id)),
        ("Family members", family),
        ("Date", a.date.format("%Y-%m-%d").to_string()),
    ] {
        let _ = writeln!(html, "<tr><td>{label}</td><td>{value}</td></tr>");
    }
    html.push_str("</table>\n</header>\n");

    // Summary
    html.push_str("<section class=\"summary\">\n<h2>Summary</h2>\n<dl class=\"summary\">\n");
    let _ = writeln!(
        html,
        "<dt>Business criticality</dt><dd id=\"criticality\">{}</dd>",
        escape(&a.criticality.level.to_string())
    );
    let _ = writeln!(
        html,
        "<dt>Criticality rationale</dt><dd>{}</dd>",
        escape(&a.criticality.justification)
    );
    let _ = writeln!(
        html,
        "<dt>Required maturity</dt><dd id=\"required-maturity\">{}</dd>",
        result.required_maturity
    );
    let _ = writeln!(
        html,
        "<dt>Actual maturity</dt><dd id=\"maturity\">{}</dd>",
        result.maturity
    );
    let _ = writeln!(
        html,
        "<dt>Quality score</dt><dd id=\"quality-score\">{}</dd>",
        result.quality_score
    );
    html.push_str("</dl>\n</section>\n");

    // Radar
    html.push_str("<section class=\"radar\">\n<h2>Quality per characteristic</h2>\n");
    html.push_str(&radar);
    html.push_str("</section>\n");

    // Color sections
    for color in GapColor::ALL {
        let _ = writeln!(
            html,
            "<section class=\"gaps {}\" style=\"border-color:{}\">",
            color.as_str(),
            swatch(color)
        );
        let _ = writeln!(html, "<h2>{}: {}</h2>", color.label(), section_title(color));
        let rows: Vec<_> = model.rows().filter(|r| result.color(r.sub.id) == color).collect();
        if rows.is_empty() {
            html.push_str("<p class=\"muted\">None.</p>\n");
        } else {
            html.push_str("<ul>\n");
            for row in rows {
                let id = row.sub.id;
                let entry = a.gaps.get(&id);
                let _ = writeln!(html, "<li data-sub=\"{id}\">");
                let _ = writeln!(
                    html,
                    "<h3>{} <span class=\"muted\">({}, gap: {})</span></h3>",
                    escape(&id.label()),
                    row.sub.parent.label(),
                    entry.map(|e| e.gap.token()).unwrap_or("large")
                );
                let reason = entry.map(|e| e.reason.as_str()).unwrap_or("");
                let reason = if reason.is_empty() { "not recorded" } else { reason };
                let _ = writeln!(html, "<p class=\"reason\">Reason: {}</p>", escape(reason));
                if color != GapColor::Green {
                    let _ = writeln!(
                        html,
                        "<p class=\"requirement\">Full requirement: {}</p>",
                        escape(&row.sub.full_requirement)
                    );
                    let _ = writeln!(
                        html,
                        "<p class=\"recommendation\">Recommendation: {}</p>",
                        escape(&row.remediation)
                    );
                }
                html.push_str("</li>\n");
            }
            html.push_str("</ul>\n");
        }
        html.push_str("</section>\n");
    }

    let _ = writeln!(
        html,
        "<footer class=\"muted\">Assessment of {}.</footer>\n</body>\n</html>",
        a.date.format("%Y-%m-%d")
    );

    Ok(ReportDocument {
        html,
        generated_at: a.date,
    })
}
