//! Static, self-contained SVG scatter plots of two CSV columns.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::experiment::CsvTable;

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x: String,
    pub y: String,
    pub log_x: bool,
    pub title: Option<String>,
}

impl PlotSpec {
    pub fn new(x: &str, y: &str) -> Self {
        Self {
            x: x.to_string(),
            y: y.to_string(),
            log_x: false,
            title: None,
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".into() } else { s.to_string() }
    }
}

/// Padded `[lo, hi]`, never degenerate.
fn range_of(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let pad = if hi > lo { 0.05 * (hi - lo) } else { lo.abs().max(1.0) * 0.5 };
    (lo - pad, hi + pad)
}

/// Points `(x, y)` from the table: rows with a missing or non-finite value
/// (or `x <= 0` on a log axis) are skipped.
pub fn points(table: &CsvTable, spec: &PlotSpec) -> Result<Vec<(f64, f64)>> {
    let xs = table.column(&spec.x)?;
    let ys = table.column(&spec.y)?;
    if table.rows.is_empty() {
        return Err(Error::InvalidParameter("CSV has no data rows".into()));
    }
    let pts: Vec<(f64, f64)> = xs
        .into_iter()
        .zip(ys)
        .filter_map(|(x, y)| Some((x?, y?)))
        .filter(|&(x, y)| x.is_finite() && y.is_finite() && (!spec.log_x || x > 0.0))
        .collect();
    if pts.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "columns '{}' and '{}' have no plottable rows",
            spec.x, spec.y
        )));
    }
    Ok(pts)
}

pub fn render_svg(table: &CsvTable, spec: &PlotSpec) -> Result<String> {
    let pts = points(table, spec)?;
    let fx = |x: f64| if spec.log_x { x.log10() } else { x };
    let (x0, x1) = range_of(pts.iter().map(|p| fx(p.0)));
    let (y0, y1) = range_of(pts.iter().map(|p| p.1));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |u: f64| LEFT + (u - x0) / (x1 - x0) * pw;
    let sy = |v: f64| TOP + (1.0 - (v - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let title = spec
        .title
        .clone()
        .unwrap_or_else(|| format!("{} vs {}", spec.y, spec.x));
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(&title)
    );
    let _ = writeln!(
        s,
        r##"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#333"/>"##
    );

    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let u = x0 + f * (x1 - x0);
        let px = sx(u);
        let label = if spec.log_x { tick_label(10f64.powf(u)) } else { tick_label(u) };
        let _ = writeln!(
            s,
            r##"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="#ddd"/><text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"##,
            TOP,
            TOP + ph,
            TOP + ph + 16.0,
            escape(&label)
        );
        let v = y0 + f * (y1 - y0);
        let py = sy(v);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{py:.1}" x2="{:.1}" y2="{py:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            py + 4.0,
            escape(&tick_label(v))
        );
    }

    let xlabel = if spec.log_x { format!("{} (log scale)", spec.x) } else { spec.x.clone() };
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 14.0,
        escape(&xlabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&spec.y)
    );

    for &(x, y) in &pts {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="#1f77b4" fill-opacity="0.75"/>"##,
            sx(fx(x)),
            sy(y)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
