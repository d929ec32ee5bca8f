//! Planar points, point sets and the exact predicates built on them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in drawing units (Ipe points).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    fn coord(self) -> robust::Coord<f64> {
        robust::Coord { x: self.x, y: self.y }
    }

    /// Lexicographic (x, then y) order. Coordinates are finite, so this is total.
    pub fn lex_cmp(&self, other: &Point2) -> Ordering {
        self.x
            .partial_cmp(&other.x)
            .unwrap_or(Ordering::Equal)
            .then(self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal))
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2 { x, y }
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2 { x, y }
    }
}

/// Euclidean distance.
pub fn distance(a: Point2, b: Point2) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Squared Euclidean distance. All orderings by distance go through this.
#[inline]
pub fn distance2(a: Point2, b: Point2) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Correctly rounded sum (Shewchuk's partials, as in Python's `math.fsum`).
/// The result does not depend on summation order.
pub fn exact_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for mut x in values {
        let mut kept = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        partials.truncate(kept);
        partials.push(x);
    }
    let Some(mut hi) = partials.pop() else {
        return 0.0;
    };
    let mut lo = 0.0;
    while let Some(y) = partials.pop() {
        let x = hi;
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    // round half to even across the remaining partials
    if let Some(&next) = partials.last() {
        if (lo < 0.0 && next < 0.0) || (lo > 0.0 && next > 0.0) {
            let y = lo * 2.0;
            let x = hi + y;
            if y == x - hi {
                hi = x;
            }
        }
    }
    hi
}

/// Sign of the orientation of `(a, b, c)`: positive when counterclockwise.
/// Evaluated with adaptive exact arithmetic, so the sign is always correct.
pub fn orient(a: Point2, b: Point2, c: Point2) -> Ordering {
    sign(robust::orient2d(a.coord(), b.coord(), c.coord()))
}

/// `Greater` when `d` lies strictly inside the circumcircle of the
/// counterclockwise triangle `(a, b, c)`, `Equal` when cocircular.
pub fn in_circle(a: Point2, b: Point2, c: Point2, d: Point2) -> Ordering {
    sign(robust::incircle(a.coord(), b.coord(), c.coord(), d.coord()))
}

fn sign(v: f64) -> Ordering {
    if v > 0.0 {
        Ordering::Greater
    } else if v < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// An ordered list of points. Index `i` is the identity of vertex `i` in every
/// graph or clustering computed from the set.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet {
    points: Vec<Point2>,
}

impl PointSet {
    /// Builds a point set, rejecting NaN and infinite coordinates.
    /// Duplicate points are accepted here; operations that need distinct
    /// points check for them with [`PointSet::ensure_distinct`].
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFiniteCoordinate(i));
        }
        Ok(PointSet { points })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().copied().map(Point2::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point2> {
        self.points.iter()
    }

    #[inline]
    pub fn dist2(&self, i: usize, j: usize) -> f64 {
        distance2(self.points[i], self.points[j])
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        distance(self.points[i], self.points[j])
    }

    /// Indices sorted lexicographically by coordinates, ties by index.
    pub fn lex_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.points[a].lex_cmp(&self.points[b]).then(a.cmp(&b)));
        order
    }

    /// Returns the lowest-index pair of coincident points, if any.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        let order = self.lex_order();
        order
            .windows(2)
            .filter(|w| self.points[w[0]] == self.points[w[1]])
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .min()
    }

    pub fn ensure_distinct(&self) -> Result<()> {
        match self.find_duplicate() {
            Some((first, second)) => Err(Error::DuplicatePoints { first, second }),
            None => Ok(()),
        }
    }

    pub fn ensure_at_least(&self, needed: usize) -> Result<()> {
        if self.len() < needed {
            Err(Error::TooFewPoints {
                needed,
                got: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Axis-aligned bounding box as `(min, max)`, or `None` for an empty set.
    pub fn bounds(&self) -> Option<(Point2, Point2)> {
        let first = *self.points.first()?;
        Some(self.points.iter().fold((first, first), |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Copy of the set with every point moved by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> PointSet {
        PointSet {
            points: self
                .points
                .iter()
                .map(|p| Point2::new(p.x + dx, p.y + dy))
                .collect(),
        }
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point2;

    fn index(&self, i: usize) -> &Point2 {
        &self.points[i]
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point2;
    type IntoIter = std::slice::Iter<'a, Point2>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
