//! Minimal static SVG renderings: stem plots, heatmaps and level diagrams.

use std::fmt::Write;

const W: f64 = 480.0;
const H: f64 = 320.0;
const PAD: f64 = 40.0;

fn header(width: f64, height: f64, title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        width / 2.0,
        escape(title)
    );
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() || hi - lo < 1e-300 {
        (lo.min(0.0) - 1.0, hi.max(0.0) + 1.0)
    } else {
        (lo, hi)
    }
}

/// Stems at each `(n, value)` from the zero line.
pub fn stem_plot(title: &str, points: &[(i64, f64)]) -> String {
    let mut s = header(W, H, title);
    let (xlo, xhi) = range(points.iter().map(|p| p.0 as f64));
    let (ylo, yhi) = range(points.iter().map(|p| p.1).chain([0.0]));
    let sx = |x: f64| PAD + (x - xlo) / (xhi - xlo).max(1.0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - ylo) / (yhi - ylo) * (H - 2.0 * PAD);
    let y0 = sy(0.0);
    let _ = writeln!(s, r#"<line x1="{PAD}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="gray"/>"#, W - PAD);
    for &(n, v) in points {
        let (x, y) = (sx(n as f64), sy(v));
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{y:.2}" stroke="black"/>"#);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="steelblue"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

/// Diverging blue/white/red colour for `t ∈ [-1, 1]`.
fn colour(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let (r, g, b) = if t >= 0.0 {
        (255.0, 255.0 * (1.0 - t), 255.0 * (1.0 - t))
    } else {
        (255.0 * (1.0 + t), 255.0 * (1.0 + t), 255.0)
    };
    format!("rgb({},{},{})", r.round() as u8, g.round() as u8, b.round() as u8)
}

/// Square heatmap of a row-major `size × size` array; rows run top to bottom.
pub fn heatmap(title: &str, size: usize, values: &[f64]) -> String {
    let side = H - 2.0 * PAD;
    let mut s = header(side + 2.0 * PAD, H, title);
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let cell = side / size as f64;
    for (i, v) in values.iter().enumerate() {
        let (r, c) = (i / size, i % size);
        let _ = writeln!(
            s,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
            PAD + c as f64 * cell,
            PAD + r as f64 * cell,
            cell,
            cell,
            colour(v / scale)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// One column of horizontal level marks per labelled spectrum.
pub fn level_diagram(title: &str, columns: &[(String, Vec<f64>)]) -> String {
    let width = (columns.len() as f64 * 60.0 + 2.0 * PAD).max(W);
    let mut s = header(width, H, title);
    let (lo, hi) = range(columns.iter().flat_map(|c| c.1.iter().copied()));
    let sy = |y: f64| H - PAD - (y - lo) / (hi - lo) * (H - 2.0 * PAD);
    let step = (width - 2.0 * PAD) / columns.len().max(1) as f64;
    for (k, (label, levels)) in columns.iter().enumerate() {
        let x0 = PAD + k as f64 * step + 0.2 * step;
        let x1 = x0 + 0.6 * step;
        for &e in levels {
            let y = sy(e);
            let _ = writeln!(s, r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="black"/>"#);
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            (x0 + x1) / 2.0,
            H - PAD / 3.0,
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}
