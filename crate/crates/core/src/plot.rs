//! Self-contained SVG scatter plots with deterministic output.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

#[derive(Debug, Clone, Copy)]
pub struct Labels<'a> {
    pub title: &'a str,
    pub x: &'a str,
    pub y: &'a str,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Padded data range; a degenerate range is widened around its value.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else {
        format!("{v:.4}").trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Markers joined by a thin polyline in input order, with labelled axes.
pub fn render_svg(points: &[(f64, f64)], labels: Labels<'_>) -> Result<String> {
    if points.is_empty() {
        return Err(Error::invalid("a plot needs at least one point"));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::invalid("plot points must be finite"));
    }
    let (x0, x1) = range(points.iter().map(|p| p.0));
    let (y0, y1) = range(points.iter().map(|p| p.1));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(labels.title)
    );
    let _ = writeln!(
        w,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (tx, ty) = (px(xv), py(yv));
        let _ = writeln!(
            w,
            r#"<line x1="{tx:.2}" y1="{:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/><text x="{tx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 19.0,
            tick_label(xv)
        );
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{ty:.2}" x2="{LEFT}" y2="{ty:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            ty + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 14.0,
        escape(labels.x)
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(labels.y)
    );
    if points.len() > 1 {
        let path: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            w,
            r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1"/>"#,
            path.join(" ")
        );
    }
    for &(x, y) in points {
        let _ = writeln!(w, r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="steelblue"/>"#, px(x), py(y));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg(points: &[(f64, f64)], labels: Labels<'_>, path: &Path) -> Result<()> {
    std::fs::write(path, render_svg(points, labels)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: Labels = Labels {
        title: "t",
        x: "i",
        y: "L <value>",
    };

    #[test]
    fn single_point() {
        let svg = render_svg(&[(1.0, 2.0)], L).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("<polyline"));
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("L &lt;value&gt;"));
    }

    #[test]
    fn deterministic_and_rejects_bad_input() {
        let pts = [(1.0, 0.6), (2.0, 0.9), (3.0, 1.1)];
        assert_eq!(render_svg(&pts, L).unwrap(), render_svg(&pts, L).unwrap());
        assert_eq!(render_svg(&pts, L).unwrap().matches("<circle").count(), 3);
        assert!(render_svg(&[], L).is_err());
        assert!(render_svg(&[(f64::NAN, 1.0)], L).is_err());
        assert!(emit_svg(&pts, L, Path::new("/nonexistent-dir/x.svg")).is_err());
    }
}
