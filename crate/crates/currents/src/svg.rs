//! Static SVG 1.1 figures of planar polyhedral currents.  Multiplicity
//! is coded into stroke width (1-cells) or fill opacity (2-cells);
//! output is deterministic: fixed decimal formatting, no timestamps.

use crate::current::PolyhedralCurrent;

const MARGIN: f64 = 0.08;
const SIZE: f64 = 480.0;

fn fmt(x: f64) -> String {
    // normalize negative zero so equal figures are byte-equal
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.3}")
}

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>) -> Frame {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if !lo.0.is_finite() {
            lo = (0.0, 0.0);
            hi = (1.0, 1.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let pad = span * MARGIN;
        Frame {
            x0: lo.0 - pad,
            y0: hi.1 + pad,
            scale: SIZE / (span + 2.0 * pad),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        // flip y: SVG grows downward
        ((x - self.x0) * self.scale, (self.y0 - y) * self.scale)
    }
}

/// Render a 0-, 1- or 2-dimensional current living in the plane.
/// Currents of equal cells render to byte-identical strings.
pub fn render(t: &PolyhedralCurrent) -> String {
    assert_eq!(t.ambient.dim, 2, "SVG rendering needs a planar current");
    let frame = Frame::fit(
        t.cells
            .iter()
            .flat_map(|c| c.simplex.vertices.iter().map(|v| (v[0], v[1]))),
    );
    let mut body = String::new();
    for c in &t.cells {
        let m = c.multiplicity * c.simplex.orientation as i64;
        let vs: Vec<(f64, f64)> = c
            .simplex
            .vertices
            .iter()
            .map(|v| frame.map(v[0], v[1]))
            .collect();
        let color = if m >= 0 { "#1f4e9c" } else { "#b03030" };
        match vs.len() {
            1 => {
                let r = 3.0 + 1.5 * (m.unsigned_abs() as f64 - 1.0);
                body.push_str(&format!(
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>\n",
                    fmt(vs[0].0),
                    fmt(vs[0].1),
                    fmt(r)
                ));
            }
            2 => {
                let w = 1.5 * m.unsigned_abs() as f64;
                body.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\" stroke-linecap=\"round\"/>\n",
                    fmt(vs[0].0),
                    fmt(vs[0].1),
                    fmt(vs[1].0),
                    fmt(vs[1].1),
                    fmt(w)
                ));
            }
            3 => {
                let opacity = (0.18 * m.unsigned_abs() as f64).min(0.9);
                body.push_str(&format!(
                    "  <polygon points=\"{},{} {},{} {},{}\" fill=\"{color}\" fill-opacity=\"{}\" stroke=\"{color}\" stroke-width=\"0.5\"/>\n",
                    fmt(vs[0].0),
                    fmt(vs[0].1),
                    fmt(vs[1].0),
                    fmt(vs[1].1),
                    fmt(vs[2].0),
                    fmt(vs[2].1),
                    fmt(opacity)
                ));
            }
            _ => unreachable!("planar cells have at most 3 vertices"),
        }
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">\n{body}</svg>\n",
        s = fmt(SIZE)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::current::unit_square_current;
    use crate::seminorm::AmbientNorm;

    #[test]
    fn square_renders_polygons_and_is_deterministic() {
        let sq = unit_square_current(AmbientNorm::Euclidean);
        let svg = render(&sq);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg, render(&sq));
    }

    #[test]
    fn boundary_renders_lines() {
        let b = unit_square_current(AmbientNorm::Euclidean).boundary();
        let svg = render(&b);
        assert_eq!(svg.matches("<line").count(), b.cells.len());
        assert!(!svg.contains("-0.000"));
    }
}
