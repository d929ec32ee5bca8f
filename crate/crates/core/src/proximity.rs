//! Region- and distance-based proximity graphs.
//!
//! Gabriel and relative-neighborhood edges are always Delaunay edges, so both
//! are computed by filtering the Delaunay edge set against every other point.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::TAU;

use crate::delaunay::delaunay;
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::graph::Graph;
use crate::neighbors::{k_nearest, range_neighbors, Strategy};

/// Default ε for the ε-graph prompt.
pub const DEFAULT_EPSILON: f64 = 28.0;
/// Default Yao sector count.
pub const DEFAULT_SECTORS: usize = 5;

fn delaunay_candidates(ps: &PointSet) -> Result<Vec<(usize, usize)>> {
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    if ps.len() == 2 {
        return Ok(vec![(0, 1)]);
    }
    Ok(delaunay(ps)?.edges().collect())
}

/// Edge `{p, q}` iff no other point lies in the closed disk with diameter `pq`.
pub fn gabriel_graph(ps: &PointSet) -> Result<Graph> {
    let edges = delaunay_candidates(ps)?.into_iter().filter(|&(p, q)| {
        let pq = ps.dist2(p, q);
        (0..ps.len()).all(|r| r == p || r == q || ps.dist2(p, r) + ps.dist2(q, r) > pq)
    });
    Ok(Graph::from_edges(ps.len(), edges))
}

/// Edge `{p, q}` iff no other point lies in the open lune of `p` and `q`.
pub fn rng_graph(ps: &PointSet) -> Result<Graph> {
    let edges = delaunay_candidates(ps)?.into_iter().filter(|&(p, q)| {
        let pq = ps.dist2(p, q);
        (0..ps.len()).all(|r| r == p || r == q || ps.dist2(p, r).max(ps.dist2(q, r)) >= pq)
    });
    Ok(Graph::from_edges(ps.len(), edges))
}

/// Radius of each point's sphere of influence: the distance to its nearest neighbor.
pub fn influence_radii(ps: &PointSet) -> Result<Vec<f64>> {
    Ok(k_nearest(ps, 1, Strategy::Auto)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| ps.dist(i, row[0]))
        .collect())
}

/// Edge `{i, j}` iff the influence disks of `i` and `j` overlap or touch.
pub fn soi_graph(ps: &PointSet) -> Result<Graph> {
    let radii = influence_radii(ps)?;
    let n = ps.len();
    let mut g = Graph::undirected(n);
    for i in 0..n {
        for j in i + 1..n {
            if ps.dist(i, j) <= radii[i] + radii[j] {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// Edge `{p, q}` iff `distance(p, q) <= epsilon`.
pub fn epsilon_graph(ps: &PointSet, epsilon: f64) -> Result<Graph> {
    epsilon_graph_with(ps, epsilon, Strategy::Auto)
}

pub fn epsilon_graph_with(ps: &PointSet, epsilon: f64, strategy: Strategy) -> Result<Graph> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::NonpositiveEpsilon(epsilon));
    }
    ps.ensure_at_least(1)?;
    let rows = range_neighbors(ps, epsilon, strategy)?;
    let edges = rows
        .into_iter()
        .enumerate()
        .flat_map(|(p, row)| row.into_iter().filter(move |&q| p < q).map(move |q| (p, q)));
    Ok(Graph::from_edges(ps.len(), edges))
}

/// Delaunay edges minus the longest edge of every triangle. Length ties mark
/// the edge with the smallest index pair.
pub fn urquhart_graph(ps: &PointSet) -> Result<Graph> {
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    if ps.len() == 2 {
        return Ok(Graph::from_edges(2, [(0, 1)]));
    }
    let dt = delaunay(ps)?;
    let mut removed = BTreeSet::new();
    for &[a, b, c] in dt.triangles() {
        let longest = [(a, b), (b, c), (c, a)]
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .max_by(|&e, &f| {
                ps.dist2(e.0, e.1)
                    .total_cmp(&ps.dist2(f.0, f.1))
                    .then(f.cmp(&e))
            })
            .expect("three sides");
        removed.insert(longest);
    }
    Ok(Graph::from_edges(
        ps.len(),
        dt.edges().filter(|e| !removed.contains(e)),
    ))
}

/// Sector of direction `(dx, dy)`: sector `m` covers angles in
/// `[offset + m·2π/sectors, offset + (m+1)·2π/sectors)`, counterclockwise
/// from the positive x-axis.
pub fn yao_sector(dx: f64, dy: f64, sectors: usize, offset: f64) -> usize {
    let angle = (dy.atan2(dx) - offset).rem_euclid(TAU);
    let m = (angle / (TAU / sectors as f64)).floor() as usize;
    m.min(sectors - 1)
}

/// Directed Yao arcs: from each point to the closest point in each sector,
/// distance ties by index. `offset` rotates the sector boundaries (radians).
pub fn yao_arcs(ps: &PointSet, sectors: usize, offset: f64) -> Result<Graph> {
    if sectors == 0 {
        return Err(Error::BadSectorCount(sectors));
    }
    if !offset.is_finite() {
        return Err(Error::invalid("sector_offset", "must be finite"));
    }
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    let mut arcs = Graph::directed(n);
    let mut best: Vec<Option<usize>> = vec![None; sectors];
    for p in 0..n {
        best.fill(None);
        for q in (0..n).filter(|&q| q != p) {
            let s = yao_sector(ps[q].x - ps[p].x, ps[q].y - ps[p].y, sectors, offset);
            let closer = best[s].is_none_or(|cur| {
                ps.dist2(p, q)
                    .total_cmp(&ps.dist2(p, cur))
                    .then(q.cmp(&cur))
                    == Ordering::Less
            });
            if closer {
                best[s] = Some(q);
            }
        }
        for &q in best.iter().flatten() {
            arcs.add_edge(p, q);
        }
    }
    Ok(arcs)
}

/// Undirected Yao graph with sectors anchored at angle 0.
pub fn yao_graph(ps: &PointSet, sectors: usize) -> Result<Graph> {
    yao_graph_rotated(ps, sectors, 0.0)
}

pub fn yao_graph_rotated(ps: &PointSet, sectors: usize, offset: f64) -> Result<Graph> {
    Ok(yao_arcs(ps, sectors, offset)?.symmetrized())
}
