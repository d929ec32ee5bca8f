//! Delaunay triangulation by lexicographic sweep insertion with Lawson flips.
//!
//! Points are inserted in (x, y) order, so each new point lies outside the
//! current hull and is joined to the hull edges it sees. Orientation and
//! in-circle tests are exact. Cocircular groups of four or more points admit
//! several Delaunay triangulations; each such cell is re-triangulated as a fan
//! from its lowest-index vertex, which makes the result independent of
//! insertion order and, for a quadrilateral, picks the diagonal with the
//! lexicographically smallest index pair.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::Result;
use crate::geometry::{in_circle, orient, PointSet};
use crate::graph::{Graph, UnionFind};

/// Triangles (counterclockwise, smallest index first) plus their edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    triangles: Vec<[usize; 3]>,
    edges: BTreeSet<(usize, usize)>,
}

impl Triangulation {
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges())
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Half-edge map: directed edge `(a, b)` -> apex `c` of the triangle `(a, b, c)`
/// lying to its left.
#[derive(Default)]
struct Mesh {
    apex: HashMap<(usize, usize), usize>,
}

impl Mesh {
    fn add(&mut self, a: usize, b: usize, c: usize) {
        self.apex.insert((a, b), c);
        self.apex.insert((b, c), a);
        self.apex.insert((c, a), b);
    }

    fn remove(&mut self, a: usize, b: usize, c: usize) {
        self.apex.remove(&(a, b));
        self.apex.remove(&(b, c));
        self.apex.remove(&(c, a));
    }

    /// Flips `(a, b)` while the apex across it lies inside the circumcircle.
    fn legalize(&mut self, ps: &PointSet, a: usize, b: usize) {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            let Some(&p) = self.apex.get(&(a, b)) else { continue };
            let Some(&d) = self.apex.get(&(b, a)) else { continue };
            if in_circle(ps[a], ps[b], ps[p], ps[d]) == Ordering::Greater {
                self.remove(a, b, p);
                self.remove(b, a, d);
                self.add(a, d, p);
                self.add(d, b, p);
                stack.push((a, d));
                stack.push((d, b));
            }
        }
    }

    /// Each triangle once, rotated so the smallest index comes first.
    fn triangles(&self) -> Vec<[usize; 3]> {
        let mut tris: Vec<[usize; 3]> = self
            .apex
            .iter()
            .filter(|(&(a, b), &c)| a < b && a < c)
            .map(|(&(a, b), &c)| [a, b, c])
            .collect();
        tris.sort_unstable();
        tris
    }
}

/// Delaunay triangulation of at least three distinct points.
///
/// Collinear input yields no triangles and the path joining the points in
/// order along the line.
pub fn delaunay(ps: &PointSet) -> Result<Triangulation> {
    ps.ensure_at_least(3)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    let order = ps.lex_order();

    let (a, b) = (order[0], order[1]);
    let first_off_line = (2..n).find(|&m| orient(ps[a], ps[b], ps[order[m]]) != Ordering::Equal);
    let Some(m) = first_off_line else {
        let edges = order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        return Ok(Triangulation {
            n,
            triangles: Vec::new(),
            edges,
        });
    };

    let mut mesh = Mesh::default();
    let chain = &order[..m];
    let c = order[m];
    let left = orient(ps[a], ps[b], ps[c]) == Ordering::Greater;
    for w in chain.windows(2) {
        if left {
            mesh.add(w[0], w[1], c);
        } else {
            mesh.add(w[1], w[0], c);
        }
    }
    let mut hull: Vec<usize> = if left {
        chain.iter().copied().chain([c]).collect()
    } else {
        chain.iter().rev().copied().chain([c]).collect()
    };

    for &p in &order[m + 1..] {
        let h = hull.len();
        let visible: Vec<bool> = (0..h)
            .map(|j| orient(ps[hull[j]], ps[hull[(j + 1) % h]], ps[p]) == Ordering::Less)
            .collect();
        let start = (0..h)
            .find(|&j| visible[j] && !visible[(j + h - 1) % h])
            .expect("a point beyond the sweep line sees at least one hull edge");
        let mut end = start;
        while visible[(end + 1) % h] {
            end = (end + 1) % h;
        }

        let mut j = start;
        loop {
            let (u, v) = (hull[j], hull[(j + 1) % h]);
            mesh.add(v, u, p);
            mesh.legalize(ps, v, u);
            if j == end {
                break;
            }
            j = (j + 1) % h;
        }

        let mut next_hull = Vec::with_capacity(h + 1);
        next_hull.push(p);
        let mut j = (end + 1) % h;
        loop {
            next_hull.push(hull[j]);
            if j == start {
                break;
            }
            j = (j + 1) % h;
        }
        hull = next_hull;
    }

    flip_until_delaunay(ps, &mut mesh);
    let triangles = canonicalize_cocircular(ps, &mut mesh);
    let edges = triangles
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    Ok(Triangulation {
        n,
        triangles,
        edges,
    })
}

/// Global Lawson pass; a no-op when the sweep already produced a Delaunay mesh.
fn flip_until_delaunay(ps: &PointSet, mesh: &mut Mesh) {
    let internal: Vec<(usize, usize)> = mesh
        .apex
        .keys()
        .copied()
        .filter(|&(a, b)| a < b && mesh.apex.contains_key(&(b, a)))
        .collect();
    for (a, b) in internal {
        mesh.legalize(ps, a, b);
        mesh.legalize(ps, b, a);
    }
}

/// Replaces every maximal group of triangles sharing one circumcircle by a fan
/// from the group's lowest-index vertex.
fn canonicalize_cocircular(ps: &PointSet, mesh: &mut Mesh) -> Vec<[usize; 3]> {
    let tris = mesh.triangles();
    let id: HashMap<[usize; 3], usize> = tris.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let tri_of = |mesh: &Mesh, a: usize, b: usize| -> Option<usize> {
        let c = *mesh.apex.get(&(a, b))?;
        Some(id[&rotate_min([a, b, c])])
    };

    let mut groups = UnionFind::new(tris.len());
    let mut any = false;
    for (i, t) in tris.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            let Some(&d) = mesh.apex.get(&(b, a)) else { continue };
            let c = mesh.apex[&(a, b)];
            if in_circle(ps[a], ps[b], ps[c], ps[d]) == Ordering::Equal {
                let j = tri_of(mesh, b, a).expect("twin exists");
                any |= groups.union(i, j);
            }
        }
    }
    if !any {
        return tris;
    }

    let root: Vec<usize> = (0..tris.len()).map(|i| groups.find(i)).collect();
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &r) in root.iter().enumerate() {
        members.entry(r).or_default().push(i);
    }
    let mut out: Vec<[usize; 3]> = Vec::with_capacity(tris.len());
    for group in members.values() {
        if group.len() == 1 {
            out.push(tris[group[0]]);
            continue;
        }
        // Boundary of the cell, counterclockwise: vertex -> next vertex.
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &i in group {
            let t = tris[i];
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let across = tri_of(mesh, b, a);
                if across.is_none_or(|j| root[j] != root[i]) {
                    next.insert(a, b);
                }
            }
        }
        let start = *next.keys().min().expect("cell has a boundary");
        let mut polygon = vec![start];
        let mut v = next[&start];
        while v != start {
            polygon.push(v);
            v = next[&v];
        }
        for w in polygon[1..].windows(2) {
            out.push(rotate_min([start, w[0], w[1]]));
        }
    }
    out.sort_unstable();

    mesh.apex.clear();
    for t in &out {
        mesh.add(t[0], t[1], t[2]);
    }
    out
}

fn rotate_min(t: [usize; 3]) -> [usize; 3] {
    if t[0] < t[1] && t[0] < t[2] {
        t
    } else if t[1] < t[2] {
        [t[1], t[2], t[0]]
    } else {
        [t[2], t[0], t[1]]
    }
}
