//! Minimal SVG line plots: one panel per block, first column on the
//! horizontal axis, one polyline per remaining column.

use std::fmt::Write as _;

use crate::table::{fmt_float, Table};

const WIDTH: f64 = 640.0;
const PANEL: f64 = 360.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn range(vals: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = vals
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if lo > hi {
        return None;
    }
    Some(if lo == hi { (lo - 0.5, hi + 0.5) } else { (lo, hi) })
}

fn coord(v: f64) -> String {
    format!("{:.2}", v)
}

pub fn render(table: &Table) -> String {
    let height = PANEL * table.blocks.len().max(1) as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = height
    );
    let _ = writeln!(s, "<!-- {} -->", table.params);
    for (bi, block) in table.blocks.iter().enumerate() {
        let top = bi as f64 * PANEL;
        let (x0, x1) = (MARGIN, WIDTH - MARGIN / 2.0);
        let (y0, y1) = (top + PANEL - MARGIN, top + MARGIN / 2.0);
        let xs = range(block.rows.iter().map(|r| r.values[0]));
        let ys = range(block.rows.iter().flat_map(|r| r.values[1..].iter().copied()));
        let _ = writeln!(
            s,
            r#"<g><polyline points="{},{} {},{} {},{}" fill="none" stroke="black"/>"#,
            coord(x0),
            coord(y1),
            coord(x0),
            coord(y0),
            coord(x1),
            coord(y0)
        );
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12">{}</text>"#, coord(x0), coord(y1 - 8.0), block.name);
        let (Some((xa, xb)), Some((ya, yb))) = (xs, ys) else {
            s.push_str("</g>\n");
            continue;
        };
        let px = |v: f64| x0 + (v - xa) / (xb - xa) * (x1 - x0);
        let py = |v: f64| y0 + (v - ya) / (yb - ya) * (y1 - y0);
        for (label, anchor, x, y) in [
            (fmt_float(xa), "start", x0, y0 + 16.0),
            (fmt_float(xb), "end", x1, y0 + 16.0),
        ] {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="10" text-anchor="{anchor}">{label}</text>"#,
                coord(x),
                coord(y)
            );
        }
        for (label, y) in [(fmt_float(ya), y0), (fmt_float(yb), y1 + 10.0)] {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{label}</text>"#,
                coord(x0 - 4.0),
                coord(y)
            );
        }
        for k in 1..block.columns.len() {
            let color = COLORS[(k - 1) % COLORS.len()];
            // Non-finite values break the line.
            let mut runs: Vec<Vec<String>> = vec![Vec::new()];
            for r in &block.rows {
                let (x, y) = (r.values[0], r.values[k]);
                if x.is_finite() && y.is_finite() {
                    runs.last_mut().unwrap().push(format!("{},{}", coord(px(x)), coord(py(y))));
                } else if !runs.last().unwrap().is_empty() {
                    runs.push(Vec::new());
                }
            }
            for run in runs.iter().filter(|r| r.len() > 1) {
                let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}"/>"#, run.join(" "));
            }
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-size="11" fill="{color}" text-anchor="end">{}</text>"#,
                coord(x1),
                coord(y1 + 14.0 * k as f64),
                block.columns[k]
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{Block, Row};

    #[test]
    fn one_polyline_per_series() {
        let mut t = Table::new("alpha=0.5".into());
        let mut b = Block::new("main", &["x", "a", "b"]);
        for i in 0..5 {
            let x = i as f64;
            b.rows.push(Row::ok(vec![x, x * x, if i == 2 { f64::NAN } else { -x }]));
        }
        t.blocks.push(b);
        let svg = render(&t);
        // a: one run; b: split by the NaN into two runs of two points.
        assert_eq!(svg.matches("<polyline").count(), 1 + 1 + 2);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
