//! Write-only SVG pictures of hierarchical meshes: leaf cells coloured by
//! level, optionally with the supports of the selected B-splines.

use std::fmt::Write;

use hsl_core::hierarchy::{leaf_cells, HBasisSelection};
use hsl_core::splinebasis::Rect;
use hsl_core::{HierarchicalMesh, Rational, Result};
use num_traits::ToPrimitive;

const PALETTE: [&str; 6] = ["#dbe9f6", "#9ecae1", "#4292c6", "#fdd0a2", "#fd8d3c", "#d94801"];
const OUTLINE: [&str; 6] = ["#08519c", "#a63603", "#006d2c", "#54278f", "#67000d", "#252525"];
const CANVAS: f64 = 640.0;
const PAD: f64 = 16.0;

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
}

impl Frame {
    fn x(&self, v: &Rational) -> f64 {
        PAD + (v.to_f64().unwrap_or(0.0) - self.x0) * self.scale
    }

    fn y(&self, v: &Rational) -> f64 {
        PAD + (self.y1 - v.to_f64().unwrap_or(0.0)) * self.scale
    }

    fn rect(&self, r: &Rect) -> (f64, f64, f64, f64) {
        let (x, y) = (self.x(&r.x0), self.y(&r.y1));
        (x, y, self.x(&r.x1) - x, self.y(&r.y0) - y)
    }
}

/// Render the leaf mesh, and the supports in `selection` when given.
pub fn render_svg(mesh: &HierarchicalMesh, selection: Option<&HBasisSelection>) -> Result<String> {
    let leaves = leaf_cells(mesh)?;
    let rects = leaves
        .iter()
        .map(|&(l, c)| Ok((l, mesh.grid(l).cell_rect(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut supports = Vec::new();
    if let Some(sel) = selection {
        for key in sel.keys() {
            supports.push((key.level, key.support_rect(mesh.grid(key.level))?));
        }
    }
    let all = rects.iter().chain(&supports).map(|(_, r)| r);
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for r in all {
        let f = |v: &Rational| v.to_f64().unwrap_or(0.0);
        xmin = xmin.min(f(&r.x0));
        xmax = xmax.max(f(&r.x1));
        ymin = ymin.min(f(&r.y0));
        ymax = ymax.max(f(&r.y1));
    }
    if xmin > xmax {
        (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
    }
    let scale = (CANVAS - 2.0 * PAD) / (xmax - xmin).max(ymax - ymin);
    let frame = Frame { x0: xmin, y1: ymax, scale };
    let width = (xmax - xmin) * scale + 2.0 * PAD;
    let height = (ymax - ymin) * scale + 2.0 * PAD;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r##"<g id="leaf-cells" stroke="#333" stroke-width="0.6">"##);
    for (level, r) in &rects {
        let (x, y, w, h) = frame.rect(r);
        let _ = writeln!(
            svg,
            r#"<rect class="level-{level}" x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{}"/>"#,
            PALETTE[level % PALETTE.len()]
        );
    }
    let _ = writeln!(svg, "</g>");
    if !supports.is_empty() {
        let _ = writeln!(svg, r#"<g id="supports" fill="none" stroke-width="1.2" stroke-opacity="0.5">"#);
        for (level, r) in &supports {
            let (x, y, w, h) = frame.rect(r);
            let _ = writeln!(
                svg,
                r#"<rect class="support-{level}" x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" stroke="{}"/>"#,
                OUTLINE[level % OUTLINE.len()]
            );
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
