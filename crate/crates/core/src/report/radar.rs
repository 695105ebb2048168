//! Heptagonal radar chart of per-characteristic scores.

use crate::model::Characteristic;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write;

/// Axis order, clockwise from the top.
pub const RADAR_AXES: [Characteristic; 7] = [
    Characteristic::Utility,
    Characteristic::Economy,
    Characteristic::Robustness,
    Characteristic::Modifiability,
    Characteristic::Productionizability,
    Characteristic::Comprehensibility,
    Characteristic::Responsibility,
];

pub const WIDTH: f64 = 420.0;
pub const HEIGHT: f64 = 360.0;
pub const CENTER_X: f64 = 210.0;
pub const CENTER_Y: f64 = 180.0;
pub const RADIUS: f64 = 120.0;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RadarError {
    #[error("radar needs exactly 7 axis values, got {0}")]
    AxisCount(usize),
    #[error("missing score for {0}")]
    MissingAxis(Characteristic),
    #[error("score {1} for {0} is above 100")]
    OutOfRange(Characteristic, u8),
}

/// Angle of axis `k` in degrees: 90 - k * 360/7.
pub fn axis_angle_degrees(k: usize) -> f64 {
    90.0 - (k as f64) * 360.0 / 7.0
}

/// SVG coordinates of the point at `fraction` of the radius along axis `k`.
pub fn axis_point(k: usize, fraction: f64) -> (f64, f64) {
    let theta = axis_angle_degrees(k) * PI / 180.0;
    let r = RADIUS * fraction;
    (CENTER_X + r * theta.cos(), CENTER_Y - r * theta.sin())
}

/// Two-decimal formatting without negative zero.
pub(crate) fn coord(v: f64) -> String {
    let rounded = (v * 100.0).round() / 100.0;
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:.2}")
}

fn points(values: impl Iterator<Item = (f64, f64)>) -> String {
    values
        .map(|(x, y)| format!("{},{}", coord(x), coord(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the radar as a standalone `<svg>` element.
pub fn render_radar(scores: &BTreeMap<Characteristic, u8>) -> Result<String, RadarError> {
    if scores.len() != RADAR_AXES.len() {
        return Err(RadarError::AxisCount(scores.len()));
    }
    let mut values = [0u8; 7];
    for (k, c) in RADAR_AXES.iter().enumerate() {
        let v = *scores.get(c).ok_or(RadarError::MissingAxis(*c))?;
        if v > 100 {
            return Err(RadarError::OutOfRange(*c, v));
        }
        values[k] = v;
    }

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" class="radar" width="{w}" height="{h}" viewBox="0 0 {w} {h}" role="img" aria-label="Quality score per characteristic">"#,
        w = WIDTH,
        h = HEIGHT
    );
    for ring in [25u32, 50, 75, 100] {
        let f = f64::from(ring) / 100.0;
        let _ = writeln!(
            svg,
            r##"  <polygon class="grid" points="{}" fill="none" stroke="#cccccc" stroke-width="1"/>"##,
            points((0..7).map(|k| axis_point(k, f)))
        );
    }
    for k in 0..7 {
        let (x, y) = axis_point(k, 1.0);
        let _ = writeln!(
            svg,
            r##"  <line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999999" stroke-width="1"/>"##,
            coord(CENTER_X),
            coord(CENTER_Y),
            coord(x),
            coord(y)
        );
    }
    let _ = writeln!(
        svg,
        r##"  <polygon class="scores" points="{}" fill="#1f77b4" fill-opacity="0.35" stroke="#1f77b4" stroke-width="2"/>"##,
        points((0..7).map(|k| axis_point(k, f64::from(values[k]) / 100.0)))
    );
    for (k, c) in RADAR_AXES.iter().enumerate() {
        let (x, y) = axis_point(k, 1.18);
        let anchor = if (x - CENTER_X).abs() < 1.0 {
            "middle"
        } else if x > CENTER_X {
            "start"
        } else {
            "end"
        };
        let _ = writeln!(
            svg,
            r#"  <text x="{}" y="{}" text-anchor="{anchor}" font-size="12" font-family="sans-serif">{} ({})</text>"#,
            coord(x),
            coord(y + 4.0),
            c.label(),
            values[k]
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
