//! Minimal SVG rendering of planned paths.

use std::fmt::Write;

use wmd_core::{Configuration, Polyline};

pub struct Layer<'a> {
    pub line: &'a Polyline,
    pub label: String,
    pub dashed: bool,
    pub color: &'static str,
}

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Renders `layers` plus start and goal pose glyphs. Output depends only on
/// the inputs. World `+y` points up in the image.
pub fn render(start: &Configuration, goal: &Configuration, layers: &[Layer], glyph: f64) -> String {
    let mut xs = vec![start.x, goal.x];
    let mut ys = vec![start.y, goal.y];
    for l in layers {
        xs.extend(l.line.points.iter().map(|p| p.0));
        ys.extend(l.line.points.iter().map(|p| p.1));
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let (x0, x1) = (fold(&xs, f64::min, f64::INFINITY) - glyph, fold(&xs, f64::max, f64::NEG_INFINITY) + glyph);
    let (y0, y1) = (fold(&ys, f64::min, f64::INFINITY) - glyph, fold(&ys, f64::max, f64::NEG_INFINITY) + glyph);
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (WIDTH - 2.0 * MARGIN) / span;
    let height = (y1 - y0) * scale + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - x0) * scale;
    let py = |y: f64| MARGIN + (y1 - y) * scale;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(WIDTH),
        h = num(height)
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (i, l) in layers.iter().enumerate() {
        if l.line.points.len() < 2 {
            continue;
        }
        let pts: Vec<String> = l
            .line
            .points
            .iter()
            .map(|&(x, y)| format!("{},{}", num(px(x)), num(py(y))))
            .collect();
        let dash = if l.dashed { r#" stroke-dasharray="8 5""# } else { "" };
        let _ = writeln!(
            out,
            r#"  <polyline id="path{i}" fill="none" stroke="{}" stroke-width="2"{dash} points="{}"/>"#,
            l.color,
            pts.join(" ")
        );
    }
    for (name, c, color) in [("start", start, "#2a9d2a"), ("goal", goal, "#c0392b")] {
        let (cx, cy) = (px(c.x), py(c.y));
        let tip = (
            px(c.x + glyph * c.heading.cos()),
            py(c.y + glyph * c.heading.sin()),
        );
        let _ = writeln!(
            out,
            r#"  <g id="{name}"><circle cx="{}" cy="{}" r="4" fill="{color}"/><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/></g>"#,
            num(cx),
            num(cy),
            num(cx),
            num(cy),
            num(tip.0),
            num(tip.1)
        );
    }
    for (i, l) in layers.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-family="sans-serif" font-size="14" fill="{}">{}</text>"#,
            num(MARGIN),
            num(20.0 + 18.0 * i as f64),
            l.color,
            escape(&l.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
