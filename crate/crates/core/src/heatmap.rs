//! Standalone SVG heatmaps of coefficient matrices, one cell per entry.
//!
//! Colour runs linearly from white at 0 to a dark blue at the matrix maximum
//! (per-matrix normalisation). Negative entries are drawn as 0.

use std::fmt::Write;

use crate::csv_format::LabeledMatrix;

const CELL: usize = 36;
const MARGIN_LEFT: usize = 190;
const MARGIN_TOP: usize = 190;
const PAD: usize = 10;
const LOW: (u8, u8, u8) = (0xff, 0xff, 0xff);
const HIGH: (u8, u8, u8) = (0x08, 0x30, 0x6b);

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Hex colour for `value` on a ramp normalised to `max`.
pub fn ramp_color(value: f64, max: f64) -> String {
    let t = if max > 0.0 {
        (value / max).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mix = |lo: u8, hi: u8| (lo as f64 + (hi as f64 - lo as f64) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(LOW.0, HIGH.0),
        mix(LOW.1, HIGH.1),
        mix(LOW.2, HIGH.2)
    )
}

pub fn render_heatmap(title: &str, m: &LabeledMatrix) -> String {
    let (rows, cols) = (m.values.rows(), m.values.cols());
    let max = m.values.max().max(0.0);
    let width = MARGIN_LEFT + cols * CELL + PAD;
    let height = MARGIN_TOP + rows * CELL + PAD;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(
        svg,
        "<metadata>orientation: row-to-column (rows are producing sectors, columns are consuming sectors); \
         color ramp: linear from {} at 0 to {} at the matrix maximum {max:?}; negative values clamp to 0</metadata>",
        ramp_color(0.0, 1.0),
        ramp_color(1.0, 1.0),
    );

    let _ = writeln!(svg, r#"<g class="cells">"#);
    for i in 0..rows {
        for j in 0..cols {
            let v = m.values.get(i, j);
            let _ = writeln!(
                svg,
                r##"<rect class="cell" x="{}" y="{}" width="{CELL}" height="{CELL}" fill="{}" stroke="#d0d0d0" stroke-width="0.5"><title>{} to {}: {v:?}</title></rect>"##,
                MARGIN_LEFT + j * CELL,
                MARGIN_TOP + i * CELL,
                ramp_color(v, max),
                escape(&m.row_labels[i]),
                escape(&m.col_labels[j]),
            );
        }
    }
    let _ = writeln!(svg, "</g>");

    let _ = writeln!(svg, r#"<g class="labels">"#);
    for (i, label) in m.row_labels.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"<text class="row-label" x="{}" y="{}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            MARGIN_LEFT - 6,
            MARGIN_TOP + i * CELL + CELL / 2,
            escape(label)
        );
    }
    for (j, label) in m.col_labels.iter().enumerate() {
        let (x, y) = (MARGIN_LEFT + j * CELL + CELL / 2, MARGIN_TOP - 6);
        let _ = writeln!(
            svg,
            r#"<text class="col-label" x="{x}" y="{y}" transform="rotate(-60 {x} {y})" dominant-baseline="middle">{}</text>"#,
            escape(label)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp_color(0.0, 2.0), "#ffffff");
        assert_eq!(ramp_color(2.0, 2.0), "#08306b");
        assert_eq!(ramp_color(-1.0, 2.0), "#ffffff");
        assert_eq!(ramp_color(5.0, 0.0), "#ffffff");
    }

    #[test]
    fn element_counts_and_escaping() {
        let labels: Vec<String> = ["A & B", "<c>", "d"].iter().map(|s| s.to_string()).collect();
        let m = LabeledMatrix::square(&labels, Matrix::identity(3)).unwrap();
        let svg = render_heatmap("test", &m);
        assert_eq!(svg.matches(r#"<rect class="cell""#).count(), 9);
        assert_eq!(svg.matches("<text ").count(), 6);
        assert!(svg.contains("A &amp; B"));
        assert!(!svg.contains("<c>"));
    }
}
