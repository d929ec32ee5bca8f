//! Distance orderings, k-nearest and fixed-radius neighbor queries.
//!
//! Brute force is the reference path. Above [`GRID_THRESHOLD`] points a
//! uniform grid prunes candidates; the final comparisons are the same
//! `(squared distance, index)` keys, so both paths return identical rows.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{Point2, PointSet};

/// Point count above which [`Strategy::Auto`] switches to the grid.
pub const GRID_THRESHOLD: usize = 1000;

/// How neighbor queries find their candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    BruteForce,
    Grid,
}

impl Strategy {
    fn use_grid(self, n: usize) -> bool {
        match self {
            Strategy::Auto => n > GRID_THRESHOLD,
            Strategy::BruteForce => false,
            Strategy::Grid => true,
        }
    }
}

/// For every point, all other points sorted by distance, ties by ascending index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborOrder {
    rows: Vec<Vec<usize>>,
}

impl NeighborOrder {
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The `k`-th nearest neighbor of `i` (1-based).
    pub fn kth(&self, i: usize, k: usize) -> usize {
        self.rows[i][k - 1]
    }

    pub fn furthest(&self, i: usize) -> usize {
        *self.rows[i].last().expect("rows have n - 1 >= 1 entries")
    }
}

/// Orders `a` and `b` by distance from `from`, ties by index.
#[inline]
pub(crate) fn by_distance(ps: &PointSet, from: usize, a: usize, b: usize) -> Ordering {
    ps.dist2(from, a)
        .total_cmp(&ps.dist2(from, b))
        .then(a.cmp(&b))
}

/// Full neighbor order of every point. O(n² log n) time and O(n²) memory.
pub fn neighbor_order(ps: &PointSet) -> Result<NeighborOrder> {
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    let rows = (0..n)
        .map(|i| {
            let mut row: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            row.sort_by(|&a, &b| by_distance(ps, i, a, b));
            row
        })
        .collect();
    Ok(NeighborOrder { rows })
}

/// The first `k` entries of every neighbor-order row.
pub fn k_nearest(ps: &PointSet, k: usize, strategy: Strategy) -> Result<Vec<Vec<usize>>> {
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    if k == 0 || k > n - 1 {
        return Err(Error::KOutOfRange { k, max: n - 1 });
    }
    if strategy.use_grid(n) {
        if let Some(grid) = Grid::for_knn(ps) {
            return Ok((0..n).map(|i| grid.k_nearest(ps, i, k)).collect());
        }
    }
    Ok((0..n).map(|i| brute_k_nearest(ps, i, k)).collect())
}

fn brute_k_nearest(ps: &PointSet, i: usize, k: usize) -> Vec<usize> {
    let mut cand: Vec<usize> = (0..ps.len()).filter(|&j| j != i).collect();
    if k < cand.len() {
        cand.select_nth_unstable_by(k - 1, |&a, &b| by_distance(ps, i, a, b));
        cand.truncate(k);
    }
    cand.sort_by(|&a, &b| by_distance(ps, i, a, b));
    cand
}

/// Index of the point furthest from each point; among equidistant candidates
/// the highest index wins (the last entry of the neighbor-order row).
pub fn furthest_neighbors(ps: &PointSet) -> Result<Vec<usize>> {
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .max_by(|&a, &b| by_distance(ps, i, a, b))
                .expect("n >= 2")
        })
        .collect())
}

/// `true` when `p` and `q` are within `eps` of each other (inclusive).
#[inline]
pub fn within_eps(p: Point2, q: Point2, eps: f64) -> bool {
    crate::geometry::distance2(p, q) <= eps * eps
}

/// For every point, the other points within `eps` (inclusive), ascending by index.
pub fn range_neighbors(ps: &PointSet, eps: f64, strategy: Strategy) -> Result<Vec<Vec<usize>>> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::NonpositiveEpsilon(eps));
    }
    ps.ensure_distinct()?;
    let n = ps.len();
    if strategy.use_grid(n) {
        if let Some(grid) = Grid::for_range(ps, eps) {
            return Ok((0..n).map(|i| grid.within(ps, i, eps)).collect());
        }
    }
    Ok((0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && within_eps(ps[i], ps[j], eps))
                .collect()
        })
        .collect())
}

/// Fixed-radius window queries at arbitrary locations.
pub(crate) struct WindowIndex<'a> {
    ps: &'a PointSet,
    radius: f64,
    grid: Option<Grid>,
}

impl<'a> WindowIndex<'a> {
    pub(crate) fn new(ps: &'a PointSet, radius: f64, strategy: Strategy) -> Self {
        let grid = if strategy.use_grid(ps.len()) {
            Grid::for_range(ps, radius)
        } else {
            None
        };
        WindowIndex { ps, radius, grid }
    }

    /// Indices of the points within the radius of `p` (inclusive), ascending.
    pub(crate) fn query(&self, p: Point2) -> Vec<usize> {
        match &self.grid {
            Some(grid) => grid.around(self.ps, p, self.radius),
            None => (0..self.ps.len())
                .filter(|&j| within_eps(p, self.ps[j], self.radius))
                .collect(),
        }
    }
}

/// Uniform bucket grid over the bounding box, keyed sparsely by cell.
struct Grid {
    origin: Point2,
    cell: f64,
    max_cell: (i64, i64),
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

/// Cells per axis beyond which the grid is abandoned for brute force; keeps
/// cell coordinates far inside the range where f64 division is exact enough.
const MAX_CELLS_PER_AXIS: f64 = 1.0e6;

impl Grid {
    fn build(ps: &PointSet, cell: f64) -> Option<Grid> {
        let (lo, hi) = ps.bounds()?;
        if !(cell > 0.0 && cell.is_finite()) {
            return None;
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        if span / cell > MAX_CELLS_PER_AXIS {
            return None;
        }
        let mut grid = Grid {
            origin: lo,
            cell,
            max_cell: (0, 0),
            buckets: HashMap::new(),
        };
        for (i, p) in ps.iter().enumerate() {
            let key = grid.key(*p);
            grid.max_cell = (grid.max_cell.0.max(key.0), grid.max_cell.1.max(key.1));
            grid.buckets.entry(key).or_default().push(i);
        }
        Some(grid)
    }

    /// Roughly two points per cell for uniformly spread input.
    fn for_knn(ps: &PointSet) -> Option<Grid> {
        let (lo, hi) = ps.bounds()?;
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        let n = ps.len() as f64;
        let cell = if w > 0.0 && h > 0.0 {
            (2.0 * w * h / n).sqrt()
        } else {
            2.0 * w.max(h) / n
        };
        Grid::build(ps, cell)
    }

    fn for_range(ps: &PointSet, eps: f64) -> Option<Grid> {
        Grid::build(ps, eps * (1.0 + 1e-6))
    }

    fn key(&self, p: Point2) -> (i64, i64) {
        (
            ((p.x - self.origin.x) / self.cell).floor() as i64,
            ((p.y - self.origin.y) / self.cell).floor() as i64,
        )
    }

    fn within(&self, ps: &PointSet, i: usize, eps: f64) -> Vec<usize> {
        let mut out = self.around(ps, ps[i], eps);
        out.retain(|&j| j != i);
        out
    }

    /// Points within `eps` of an arbitrary location, ascending by index.
    fn around(&self, ps: &PointSet, p: Point2, eps: f64) -> Vec<usize> {
        let (cx, cy) = self.key(p);
        let mut out = Vec::new();
        for gx in cx - 1..=cx + 1 {
            for gy in cy - 1..=cy + 1 {
                if let Some(bucket) = self.buckets.get(&(gx, gy)) {
                    out.extend(
                        bucket
                            .iter()
                            .copied()
                            .filter(|&j| within_eps(p, ps[j], eps)),
                    );
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn ring(&self, center: (i64, i64), r: i64, mut visit: impl FnMut(&[usize])) {
        let (cx, cy) = center;
        let mut cell = |x: i64, y: i64| {
            if let Some(b) = self.buckets.get(&(x, y)) {
                visit(b);
            }
        };
        if r == 0 {
            cell(cx, cy);
            return;
        }
        for x in cx - r..=cx + r {
            cell(x, cy - r);
            cell(x, cy + r);
        }
        for y in cy - r + 1..=cy + r - 1 {
            cell(cx - r, y);
            cell(cx + r, y);
        }
    }

    fn k_nearest(&self, ps: &PointSet, i: usize, k: usize) -> Vec<usize> {
        let center = self.key(ps[i]);
        let reach = center
            .0
            .max(self.max_cell.0 - center.0)
            .max(center.1)
            .max(self.max_cell.1 - center.1);
        let mut cand: Vec<(f64, usize)> = Vec::new();
        let mut r = 0;
        loop {
            self.ring(center, r, |bucket| {
                cand.extend(
                    bucket
                        .iter()
                        .filter(|&&j| j != i)
                        .map(|&j| (ps.dist2(i, j), j)),
                );
            });
            if r >= reach {
                break;
            }
            if cand.len() >= k {
                cand.select_nth_unstable_by(k - 1, cmp_key);
                // Unvisited cells are at least r whole cells away.
                let bound = r as f64 * self.cell;
                if cand[k - 1].0 < bound * bound * (1.0 - 1e-9) {
                    break;
                }
            }
            r += 1;
        }
        cand.sort_unstable_by(cmp_key);
        cand.truncate(k);
        cand.into_iter().map(|(_, j)| j).collect()
    }
}

fn cmp_key(a: &(f64, usize), b: &(f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}
