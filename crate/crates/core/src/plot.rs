//! SVG rendering of persistence diagrams.
//!
//! Birth runs along x and death along y. Classes that never die are drawn on
//! a band above the plot area labeled with an infinity sign. Coincident
//! points share one marker annotated with their multiplicity.

use std::fmt::Write;

use crate::persistence::PersistenceDiagram;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 56.0;
const BAND: f64 = 28.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub fn diagram_svg(d: &PersistenceDiagram) -> String {
    let finite = d
        .points()
        .iter()
        .flat_map(|p| [p.birth, p.death])
        .filter(|v| v.is_finite());
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for v in finite {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi <= lo {
        hi = lo + 1.0;
    }
    let pad = 0.05 * (hi - lo);
    hi += pad;

    let plot_top = MARGIN + BAND;
    let plot_bottom = SIZE - MARGIN;
    let span = plot_bottom - plot_top;
    let sx = |v: f64| MARGIN + (v - lo) / (hi - lo) * (SIZE - 2.0 * MARGIN);
    let sy = |v: f64| {
        if v.is_finite() {
            plot_bottom - (v - lo) / (hi - lo) * span
        } else {
            MARGIN + BAND / 2.0
        }
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    // axes
    let _ = writeln!(
        s,
        r#"<line x1="{MARGIN}" y1="{plot_bottom}" x2="{}" y2="{plot_bottom}" stroke="black"/>"#,
        SIZE - MARGIN
    );
    let _ = writeln!(s, r#"<line x1="{MARGIN}" y1="{plot_bottom}" x2="{MARGIN}" y2="{MARGIN}" stroke="black"/>"#);
    for t in 0..=4 {
        let v = lo + (hi - lo) * t as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(v),
            plot_bottom + 16.0,
            tick(v)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN - 6.0,
            sy(v) + 4.0,
            tick(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">birth</text>"#,
        SIZE / 2.0,
        SIZE - MARGIN / 3.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{0}" y="{1}" text-anchor="middle" transform="rotate(-90 {0} {1})">death</text>"#,
        MARGIN / 3.0,
        SIZE / 2.0
    );
    // diagonal and infinity band
    let _ = writeln!(
        s,
        r#"<line class="diagonal" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
        sx(lo),
        sy(lo),
        sx(hi),
        sy(hi)
    );
    let yinf = sy(f64::INFINITY);
    let _ = writeln!(
        s,
        r#"<line class="infinity" x1="{MARGIN}" y1="{yinf}" x2="{}" y2="{yinf}" stroke="gray" stroke-dasharray="2 2"/>"#,
        SIZE - MARGIN
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">∞</text>"#, MARGIN - 6.0, yinf + 4.0);

    // markers, one per distinct point
    let pts = d.points();
    let mut i = 0;
    while i < pts.len() {
        let mut j = i + 1;
        while j < pts.len() && pts[j] == pts[i] {
            j += 1;
        }
        let p = pts[i];
        let (x, y) = (sx(p.birth), sy(p.death));
        let color = COLORS[p.dim % COLORS.len()];
        let _ = writeln!(
            s,
            r#"<circle class="point" cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{color}" fill-opacity="0.8"><title>H{} ({}, {})</title></circle>"#,
            p.dim,
            p.birth,
            if p.is_infinite() { "inf".to_string() } else { p.death.to_string() }
        );
        if j - i > 1 {
            let _ = writeln!(
                s,
                r#"<text class="multiplicity" x="{:.2}" y="{:.2}" font-size="10">{}</text>"#,
                x + 5.0,
                y - 5.0,
                j - i
            );
        }
        i = j;
    }

    // legend
    let dims: std::collections::BTreeSet<usize> = pts.iter().map(|p| p.dim).collect();
    for (row, dim) in dims.iter().enumerate() {
        let y = MARGIN + BAND + 14.0 + 16.0 * row as f64;
        let x = SIZE - MARGIN - 40.0;
        let _ = writeln!(
            s,
            r#"<circle cx="{x}" cy="{}" r="4" fill="{}"/><text x="{}" y="{y}">H{dim}</text>"#,
            y - 4.0,
            COLORS[dim % COLORS.len()],
            x + 8.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn tick(v: f64) -> String {
    let t = format!("{v:.3}");
    let t = t.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}
