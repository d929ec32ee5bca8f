use std::fmt::Write;

use super::document::{Document, Palette, Symbol};
use super::format_coord as f;

/// Knobs for readers on other Ipe versions or stylesheets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpeOptions {
    pub version: String,
    /// Symbol for cluster and plain points; noise always uses `mark/cross(sx)`.
    pub disk_mark: String,
    pub mark_size: String,
}

impl Default for IpeOptions {
    fn default() -> Self {
        IpeOptions {
            version: "70218".into(),
            disk_mark: Symbol::Disk.ipe_name().into(),
            mark_size: "normal".into(),
        }
    }
}

/// Serializes `doc` as a complete single-page Ipe file. Segments and circles
/// come first so the marks are drawn on top.
pub fn write_ipe(doc: &Document) -> Vec<u8> {
    write_ipe_with(doc, &IpeOptions::default())
}

pub fn write_ipe_with(doc: &Document, options: &IpeOptions) -> Vec<u8> {
    let mut out = String::new();
    let (w, h) = doc.page();
    let (w, h) = (f(w), f(h));
    out.push_str("<?xml version=\"1.0\"?>\n");
    let _ = writeln!(out, "<ipe version=\"{}\" creator=\"proxigraph\">", attr(&options.version));
    out.push_str("<ipestyle name=\"proxigraph\">\n");
    let _ = writeln!(out, "<layout paper=\"{w} {h}\" origin=\"0 0\" frame=\"{w} {h}\"/>");
    out.push_str("</ipestyle>\n");
    out.push_str("<page>\n");
    out.push_str("<layer name=\"alpha\"/>\n");
    out.push_str("<view layers=\"alpha\" active=\"alpha\"/>\n");
    let ps = doc.points();
    for s in doc.segments() {
        let (p, q) = (ps[s.a], ps[s.b]);
        let _ = writeln!(
            out,
            "<path stroke=\"{}\">{} {} m {} {} l</path>",
            Palette::color(s.color).ipe(),
            f(p.x),
            f(p.y),
            f(q.x),
            f(q.y)
        );
    }
    for c in doc.circles() {
        let p = ps[c.center];
        let r = f(c.radius);
        let _ = writeln!(
            out,
            "<path stroke=\"{}\">{r} 0 0 {r} {} {} e</path>",
            Palette::color(c.color).ipe(),
            f(p.x),
            f(p.y)
        );
    }
    for (p, m) in ps.iter().zip(doc.marks()) {
        let _ = writeln!(
            out,
            "<use name=\"{}\" pos=\"{} {}\" size=\"{}\" stroke=\"{}\"/>",
            match m.symbol {
                Symbol::Disk => attr(&options.disk_mark),
                Symbol::Cross => attr(Symbol::Cross.ipe_name()),
            },
            f(p.x),
            f(p.y),
            attr(&options.mark_size),
            Palette::color(m.color).ipe()
        );
    }
    out.push_str("</page>\n");
    out.push_str("</ipe>\n");
    out.into_bytes()
}

fn attr(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;")
}
