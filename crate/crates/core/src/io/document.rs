use crate::clustering::Clustering;
use crate::geometry::PointSet;
use crate::graph::Graph;

/// Ipe's default A4 page, in points.
pub const DEFAULT_PAGE: (f64, f64) = (595.0, 842.0);

/// An RGB color with components in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Color {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Color {
    pub const fn rgb(r: f64, g: f64, b: f64) -> Color {
        Color { r, g, b }
    }

    /// Ipe color attribute: a single gray level or three components.
    pub fn ipe(&self) -> String {
        let c = |v: f64| super::format_coord((v * 1000.0).round() / 1000.0);
        if self.r == self.g && self.g == self.b {
            c(self.r)
        } else {
            format!("{} {} {}", c(self.r), c(self.g), c(self.b))
        }
    }

    pub fn hex(&self) -> String {
        let c = |v: f64| (v * 255.0).round().clamp(0.0, 255.0) as u8;
        format!("#{:02x}{:02x}{:02x}", c(self.r), c(self.g), c(self.b))
    }
}

/// Fixed cluster palette: eight named colors, then generated hues.
#[derive(Debug, Clone, Copy, Default)]
pub struct Palette;

const NAMED: [(&str, Color); 8] = [
    ("black", Color::rgb(0.0, 0.0, 0.0)),
    ("red", Color::rgb(1.0, 0.0, 0.0)),
    ("blue", Color::rgb(0.0, 0.0, 1.0)),
    ("green", Color::rgb(0.0, 1.0, 0.0)),
    ("orange", Color::rgb(1.0, 0.647, 0.0)),
    ("purple", Color::rgb(0.627, 0.125, 0.941)),
    ("brown", Color::rgb(0.647, 0.165, 0.165)),
    ("gray", Color::rgb(0.745, 0.745, 0.745)),
];

impl Palette {
    pub const BLACK: usize = 0;
    pub const GRAY: usize = 7;

    pub fn name(index: usize) -> Option<&'static str> {
        NAMED.get(index).map(|(n, _)| *n)
    }

    /// Color for palette slot `index`. Slots past the named ones step the hue
    /// by the golden angle at fixed saturation and value.
    pub fn color(index: usize) -> Color {
        if let Some((_, c)) = NAMED.get(index) {
            return *c;
        }
        let hue = ((index - NAMED.len()) as f64 * 137.508).rem_euclid(360.0);
        let round = |v: f64| (v * 1000.0).round() / 1000.0;
        let (r, g, b) = hsv(hue, 0.65, 0.85);
        Color::rgb(round(r), round(g), round(b))
    }
}

fn hsv(h: f64, s: f64, v: f64) -> (f64, f64, f64) {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    (r + m, g + m, b + m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Disk,
    /// Used for noise points.
    Cross,
}

impl Symbol {
    pub fn ipe_name(self) -> &'static str {
        match self {
            Symbol::Disk => "mark/disk(sx)",
            Symbol::Cross => "mark/cross(sx)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark {
    pub color: usize,
    pub symbol: Symbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub a: usize,
    pub b: usize,
    pub color: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: usize,
    pub radius: f64,
    pub color: usize,
}

/// A drawing: styled point marks, segments between points, and circles
/// around points. Every index refers into `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    points: PointSet,
    marks: Vec<Mark>,
    segments: Vec<Segment>,
    circles: Vec<Circle>,
    page: (f64, f64),
}

impl Default for Document {
    fn default() -> Self {
        Document::new(PointSet::default())
    }
}

impl Document {
    /// Every point as a black disk.
    pub fn new(points: PointSet) -> Document {
        let marks = vec![
            Mark {
                color: Palette::BLACK,
                symbol: Symbol::Disk,
            };
            points.len()
        ];
        Document {
            points,
            marks,
            segments: Vec::new(),
            circles: Vec::new(),
            page: DEFAULT_PAGE,
        }
    }

    /// Adds one black segment per edge, in edge order.
    ///
    /// Panics if the graph has a different vertex count.
    pub fn with_graph(mut self, g: &Graph) -> Document {
        assert_eq!(g.n(), self.points.len(), "graph and point set differ in size");
        for (a, b) in g.edges() {
            self.segments.push(Segment {
                a,
                b,
                color: Palette::BLACK,
            });
        }
        self
    }

    /// Colors cluster `c` with palette slot `c`; noise becomes gray crosses.
    ///
    /// Panics if the clustering has a different point count.
    pub fn with_clustering(mut self, c: &Clustering) -> Document {
        assert_eq!(c.len(), self.points.len(), "clustering and point set differ in size");
        for (mark, label) in self.marks.iter_mut().zip(c.labels()) {
            *mark = match label {
                Some(l) => Mark {
                    color: *l,
                    symbol: Symbol::Disk,
                },
                None => Mark {
                    color: Palette::GRAY,
                    symbol: Symbol::Cross,
                },
            };
        }
        self
    }

    /// One circle of the given radius around each point.
    pub fn with_circles(mut self, radii: &[f64], color: usize) -> Document {
        assert_eq!(radii.len(), self.points.len(), "one radius per point");
        for (center, &radius) in radii.iter().enumerate() {
            self.circles.push(Circle {
                center,
                radius,
                color,
            });
        }
        self
    }

    pub fn with_page(mut self, width: f64, height: f64) -> Document {
        self.page = (width, height);
        self
    }

    pub fn push_segment(&mut self, a: usize, b: usize, color: usize) {
        assert!(a < self.points.len() && b < self.points.len(), "segment endpoint out of range");
        self.segments.push(Segment { a, b, color });
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn page(&self) -> (f64, f64) {
        self.page
    }
}
