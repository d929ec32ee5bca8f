use std::cmp::Ordering;

use crate::error::Result;
use crate::geometry::PointSet;
use crate::graph::Graph;

/// A weighted undirected edge, `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

impl WeightedEdge {
    fn new(i: usize, j: usize, weight: f64) -> Self {
        WeightedEdge {
            a: i.min(j),
            b: i.max(j),
            weight,
        }
    }

    /// Weight first, then the edge's index pair.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.a.cmp(&other.a))
            .then(self.b.cmp(&other.b))
    }
}

/// Minimum spanning tree of the complete graph on `n` vertices, by Prim's
/// algorithm in O(n²). Ties are broken by edge index pair, which makes the
/// tree unique. Edges are returned in the order they join the tree.
pub fn prim(n: usize, weight: impl Fn(usize, usize) -> f64) -> Vec<WeightedEdge> {
    if n == 0 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<WeightedEdge>> = vec![None; n];
    let mut out = Vec::with_capacity(n - 1);
    let mut last = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let mut pick: Option<usize> = None;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let cand = WeightedEdge::new(last, v, weight(last, v));
            if best[v].is_none_or(|cur| cand.total_cmp(&cur) == Ordering::Less) {
                best[v] = Some(cand);
            }
            let here = best[v].expect("just set");
            if pick.is_none_or(|p| here.total_cmp(&best[p].expect("candidate")) == Ordering::Less) {
                pick = Some(v);
            }
        }
        let v = pick.expect("a vertex remains outside the tree");
        in_tree[v] = true;
        out.push(best[v].expect("candidate"));
        last = v;
    }
    out
}

/// Euclidean minimum spanning tree edges with their lengths.
pub fn emst_edges(ps: &PointSet) -> Result<Vec<WeightedEdge>> {
    ps.ensure_at_least(1)?;
    ps.ensure_distinct()?;
    Ok(prim(ps.len(), |i, j| ps.dist2(i, j))
        .into_iter()
        .map(|e| WeightedEdge {
            weight: e.weight.sqrt(),
            ..e
        })
        .collect())
}

/// Euclidean minimum spanning tree as an undirected graph.
pub fn emst(ps: &PointSet) -> Result<Graph> {
    let edges = emst_edges(ps)?;
    Ok(Graph::from_edges(ps.len(), edges.iter().map(|e| (e.a, e.b))))
}
