use std::fmt::Write;

use super::document::{Document, Palette};
use super::format_coord as f;

/// Point marker radius in drawing units.
const POINT_RADIUS: f64 = 2.0;

/// Serializes `doc` as a standalone SVG 1.1 image. The view box is the
/// bounding box of the points grown by 5% of its larger side on each edge,
/// and y is negated so the picture is upright as in Ipe.
pub fn write_svg(doc: &Document) -> Vec<u8> {
    let ps = doc.points();
    let view_box = match ps.bounds() {
        None => "0 0 100 100".to_string(),
        Some((lo, hi)) => {
            let (w, h) = (hi.x - lo.x, hi.y - lo.y);
            let mut m = 0.05 * w.max(h);
            if m == 0.0 {
                m = 1.0;
            }
            format!("{} {} {} {}", f(lo.x - m), f(-hi.y - m), f(w + 2.0 * m), f(h + 2.0 * m))
        }
    };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{view_box}\">"
    );
    out.push_str("<g fill=\"none\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\">\n");
    for s in doc.segments() {
        let (p, q) = (ps[s.a], ps[s.b]);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\"/>",
            f(p.x),
            f(-p.y),
            f(q.x),
            f(-q.y),
            Palette::color(s.color).hex()
        );
    }
    for c in doc.circles() {
        let p = ps[c.center];
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"{}\"/>",
            f(p.x),
            f(-p.y),
            f(c.radius),
            Palette::color(c.color).hex()
        );
    }
    out.push_str("</g>\n");
    for (p, m) in ps.iter().zip(doc.marks()) {
        let color = Palette::color(m.color).hex();
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\" stroke=\"{color}\"/>",
            f(p.x),
            f(-p.y),
            f(POINT_RADIUS)
        );
    }
    out.push_str("</svg>\n");
    out.into_bytes()
}
