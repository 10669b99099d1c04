//! Deterministic SVG output. Positions come from certified midpoints and are
//! printed with 12 significant digits; nothing here feeds back into geometry.

use std::fmt::Write;

use knfaces_core::analysis::FaceCertificate;
use knfaces_core::arrangement::{Arrangement, NodeRef};
use knfaces_core::drawings::{crossing_point, ConvexDrawing, CrossingPoint, RegularGeometry};

use crate::error::CliError;

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 40.0;
const COORD_BITS: u32 = 96;
const HIGHLIGHT: &str = "#f28e1c";

/// Fill per face size; larger sizes share the last colour.
const SIZE_FILLS: [&str; 6] = ["#dce9f5", "#b7d4ea", "#8fbcdd", "#5e9fcc", "#3b7fb6", "#22609a"];

pub struct RenderOptions {
    pub fill_faces: bool,
    pub highlight: Option<FaceCertificate>,
}

/// `x` with 12 significant digits, trailing zeros removed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn vertex_xy(d: &ConvexDrawing, g: Option<&RegularGeometry>, v: u32) -> (f64, f64) {
    match g {
        Some(g) => {
            let (x, y) = g.vertex_box(v, COORD_BITS);
            (x.mid_f64(), y.mid_f64())
        }
        None => d.vertex_f64(v),
    }
}

fn node_xy(d: &ConvexDrawing, g: Option<&RegularGeometry>, node: NodeRef) -> Result<(f64, f64), CliError> {
    Ok(match node {
        NodeRef::Vertex(v) => vertex_xy(d, g, v),
        NodeRef::Crossing([c1, c2]) => match crossing_point(d, c1, c2, COORD_BITS)? {
            CrossingPoint::Exact(p) => p.to_f64(),
            CrossingPoint::Box(x, y) => (x.mid_f64(), y.mid_f64()),
        },
    })
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Self {
        let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
        Frame { min_x, max_y, scale }
    }

    fn map(&self, (x, y): (f64, f64)) -> String {
        let sx = MARGIN + (x - self.min_x) * self.scale;
        let sy = MARGIN + (self.max_y - y) * self.scale;
        format!("{},{}", fmt_num(sx), fmt_num(sy))
    }
}

fn polygon(out: &mut String, frame: &Frame, corners: &[(f64, f64)], fill: &str, extra: &str) {
    let pts: Vec<String> = corners.iter().map(|&p| frame.map(p)).collect();
    writeln!(out, r#"  <polygon points="{}" fill="{fill}"{extra}/>"#, pts.join(" ")).unwrap();
}

pub fn render_svg(a: &Arrangement, opts: &RenderOptions) -> Result<String, CliError> {
    let d = a.drawing();
    let n = d.n();
    let regular = d.is_regular().then(|| RegularGeometry::new(n));
    let g = regular.as_ref();
    let vertices: Vec<(f64, f64)> = (0..n).map(|v| vertex_xy(d, g, v)).collect();
    let frame = Frame::fit(&vertices);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = fmt_num(SIZE)
    )
    .unwrap();
    writeln!(out, "  <title>K_{n}</title>").unwrap();
    writeln!(out, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();
    if opts.fill_faces {
        writeln!(out, r#"  <g id="faces" stroke="none">"#).unwrap();
        for f in a.bounded_faces() {
            let corners = a
                .face_nodes(f)
                .iter()
                .map(|&v| node_xy(d, g, a.node_ref(v)))
                .collect::<Result<Vec<_>, _>>()?;
            let fill = SIZE_FILLS[(corners.len() - 3).min(SIZE_FILLS.len() - 1)];
            polygon(&mut out, &frame, &corners, fill, &format!(r#" data-size="{}""#, corners.len()));
        }
        writeln!(out, "  </g>").unwrap();
    }
    if let Some(cert) = &opts.highlight {
        let corners = cert.corners.iter().map(|&c| node_xy(d, g, c)).collect::<Result<Vec<_>, _>>()?;
        writeln!(out, r#"  <g id="highlight">"#).unwrap();
        polygon(&mut out, &frame, &corners, HIGHLIGHT, &format!(r#" data-size="{}""#, cert.k));
        writeln!(out, "  </g>").unwrap();
    }
    writeln!(out, r##"  <g id="chords" stroke="#1a1a1a" stroke-width="1" fill="none">"##).unwrap();
    for c in a.chords() {
        let (p, q) = (frame.map(vertices[c.i as usize]), frame.map(vertices[c.j as usize]));
        let (p, q) = (p.split_once(',').unwrap(), q.split_once(',').unwrap());
        writeln!(out, r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, p.0, p.1, q.0, q.1).unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, r##"  <g id="vertices" fill="#c0392b">"##).unwrap();
    for (v, &p) in vertices.iter().enumerate() {
        let (x, y) = frame.map(p).split_once(',').map(|(x, y)| (x.to_string(), y.to_string())).unwrap();
        writeln!(out, r#"    <circle cx="{x}" cy="{y}" r="4" data-vertex="{v}"/>"#).unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(500.0), "500");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(123.456789012345), "123.456789012");
        assert_eq!(fmt_num(-2.5), "-2.5");
    }
}
