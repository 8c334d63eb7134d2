//! Self-contained SVG plots: Wigner heatmaps and EP line plots.

use std::fmt::Write;

use nonclassical::wigner::WignerField;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 40.0;
const PLOT: f64 = 460.0;

const NEGATIVE: (f64, f64, f64) = (33.0, 102.0, 172.0);
const POSITIVE: (f64, f64, f64) = (178.0, 24.0, 43.0);
const PALETTE: [&str; 4] = ["#1b6ca8", "#c0392b", "#27ae60", "#8e44ad"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Diverging scale: white at `t = 0`, saturating at `t = ±1`.
pub fn diverging_color(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let end = if t < 0.0 { NEGATIVE } else { POSITIVE };
    let a = t.abs();
    let mix = |c: f64| (255.0 + a * (c - 255.0)).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(end.0), mix(end.1), mix(end.2))
}

/// Ticks at 1, 2 or 5 times a power of ten, about five per axis.
pub fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|f| f * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{:.4}", v + 0.0);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn axes(out: &mut String, x_range: (f64, f64), y_range: (f64, f64), x_label: &str, y_label: &str) {
    let bottom = TOP + PLOT;
    let _ = writeln!(out, r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#);
    for t in nice_ticks(x_range.0, x_range.1) {
        let x = LEFT + (t - x_range.0) / (x_range.1 - x_range.0) * PLOT;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 5.0,
            bottom + 20.0,
            fmt_tick(t)
        );
    }
    for t in nice_ticks(y_range.0, y_range.1) {
        let y = bottom - (t - y_range.0) / (y_range.1 - y_range.0) * PLOT;
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            fmt_tick(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + PLOT / 2.0,
        bottom + 42.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + PLOT / 2.0,
        TOP + PLOT / 2.0,
        escape(y_label)
    );
}

fn open(out: &mut String, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + PLOT / 2.0,
        escape(title)
    );
}

/// Heatmap of W over the grid. The color scale runs over `[−M, M]` with
/// `M = max |W|`, so zero always maps to white.
pub fn heatmap(field: &WignerField) -> String {
    let g = &field.grid;
    let vmax = field.max_abs().max(f64::MIN_POSITIVE);
    let mut out = String::new();
    open(&mut out, &format!("W(q,p)  {}  [{}]", field.label, field.evaluator.name()));

    // node (i, j) owns the cell around it
    let cw = PLOT / g.nq as f64;
    let ch = PLOT / g.np as f64;
    let _ = writeln!(out, r#"<g shape-rendering="crispEdges">"#);
    for i in 0..g.nq {
        for j in 0..g.np {
            let x = LEFT + i as f64 * cw;
            let y = TOP + (g.np - 1 - j) as f64 * ch;
            let _ = writeln!(
                out,
                r#"<rect x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                cw + 0.05,
                ch + 0.05,
                diverging_color(field.at(i, j) / vmax)
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let half_q = g.dq() / 2.0;
    let half_p = g.dp() / 2.0;
    axes(&mut out, (g.q_min - half_q, g.q_max + half_q), (g.p_min - half_p, g.p_max + half_p), "q", "p");

    // color bar
    let bar_x = LEFT + PLOT + 30.0;
    let steps = 40;
    let step_h = PLOT / steps as f64;
    for k in 0..steps {
        let t = 1.0 - (k as f64 + 0.5) / steps as f64 * 2.0;
        let _ = writeln!(
            out,
            r#"<rect x="{bar_x}" y="{:.3}" width="20" height="{:.3}" fill="{}"/>"#,
            TOP + k as f64 * step_h,
            step_h + 0.05,
            diverging_color(t)
        );
    }
    let _ = writeln!(out, r#"<rect x="{bar_x}" y="{TOP}" width="20" height="{PLOT}" fill="none" stroke="black"/>"#);
    for (t, y) in [(vmax, TOP), (0.0, TOP + PLOT / 2.0), (-vmax, TOP + PLOT)] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            bar_x + 24.0,
            y + 4.0,
            if t == 0.0 { "0".to_string() } else { format!("{t:.3e}") }
        );
    }
    out.push_str("</svg>\n");
    out
}

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

/// Line plot with one polyline per series and a legend.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    y1 += 0.05 * (y1 - y0);

    let mut out = String::new();
    open(&mut out, title);
    axes(&mut out, (x0, x1), (y0, y1), x_label, y_label);
    let bottom = TOP + PLOT;
    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut pts = String::new();
        for &(x, y) in &s.points {
            let px = LEFT + (x - x0) / (x1 - x0) * PLOT;
            let py = bottom - (y - y0) / (y1 - y0) * PLOT;
            let _ = write!(pts, "{px:.2},{py:.2} ");
        }
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.trim_end()
        );
        let ly = TOP + 15.0 + 18.0 * k as f64;
        let lx = LEFT + PLOT - 150.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(s.name)
        );
    }
    out.push_str("</svg>\n");
    out
}
