use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::Clustering;
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::graph::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linkage {
    /// Cluster distance is the closest pair across the two clusters.
    Single,
    /// Cluster distance is the farthest pair across the two clusters.
    Complete,
}

impl Linkage {
    pub fn id(self) -> &'static str {
        match self {
            Linkage::Single => "single-linkage",
            Linkage::Complete => "complete-linkage",
        }
    }

    fn combine(self, a: f64, b: f64) -> f64 {
        match self {
            Linkage::Single => a.min(b),
            Linkage::Complete => a.max(b),
        }
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Linkage {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "single-linkage" | "single" => Ok(Linkage::Single),
            "complete-linkage" | "complete" => Ok(Linkage::Complete),
            _ => Err(()),
        }
    }
}

/// One agglomeration step. Leaves are nodes `0..n`; the `m`-th merge
/// creates node `n + m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    /// The smaller of the two merged node ids.
    pub a: usize,
    pub b: usize,
    pub distance: f64,
    /// Number of leaves under the new node.
    pub size: usize,
}

/// The full merge sequence, from `n` singletons down to one cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    n: usize,
    linkage: Linkage,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn linkage(&self) -> Linkage {
        self.linkage
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    /// Stops agglomerating once `target` clusters remain.
    pub fn cut(&self, target: usize) -> Result<Clustering> {
        if target == 0 || target > self.n {
            return Err(Error::TargetOutOfRange {
                target,
                max: self.n,
            });
        }
        let mut uf = UnionFind::new(2 * self.n);
        for (m, merge) in self.merges[..self.n - target].iter().enumerate() {
            uf.union(merge.a, self.n + m);
            uf.union(merge.b, self.n + m);
        }
        let raw: Vec<Option<usize>> = (0..self.n).map(|i| Some(uf.find(i))).collect();
        Ok(Clustering::from_raw(&raw, None, None))
    }
}

/// Agglomerative clustering of `ps` under `linkage`. At every step the pair
/// of clusters at the smallest linkage distance merges; ties go to the pair
/// with the smallest `(min node id, max node id)`.
pub fn dendrogram(ps: &PointSet, linkage: Linkage) -> Result<Dendrogram> {
    ps.ensure_at_least(1)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    // Squared distances: min and max commute with the square root, so merge
    // order is unaffected and heights are taken back through sqrt.
    let mut d: Vec<f64> = Vec::with_capacity(n * n);
    for i in 0..n {
        d.extend((0..n).map(|j| ps.dist2(i, j)));
    }
    let mut slots = Slots {
        n,
        d,
        id: (0..n).collect(),
        active: vec![true; n],
        size: vec![1; n],
        nn: vec![None; n],
    };
    for s in 0..n {
        slots.refresh(s);
    }

    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    for m in 0..n.saturating_sub(1) {
        let (x, y) = slots.closest_pair();
        let dist = slots.get(x, y);
        let (ia, ib) = (slots.id[x], slots.id[y]);
        let size = slots.size[x] + slots.size[y];
        merges.push(Merge {
            a: ia.min(ib),
            b: ia.max(ib),
            distance: dist.sqrt(),
            size,
        });

        // x becomes the merged cluster, y retires
        slots.active[y] = false;
        slots.nn[y] = None;
        for z in 0..n {
            if slots.active[z] && z != x {
                let v = linkage.combine(slots.get(x, z), slots.get(y, z));
                slots.set(x, z, v);
            }
        }
        slots.id[x] = n + m;
        slots.size[x] = size;
        slots.refresh(x);
        for z in 0..n {
            if !slots.active[z] || z == x {
                continue;
            }
            match slots.nn[z] {
                Some(t) if t == x || t == y => slots.refresh(z),
                Some(t) if slots.key(z, x).total_cmp(&slots.key(z, t)) == Ordering::Less => {
                    slots.nn[z] = Some(x)
                }
                _ => {}
            }
        }
    }
    Ok(Dendrogram { n, linkage, merges })
}

/// Cuts the dendrogram of `ps` at `target` clusters.
pub fn agglomerate(ps: &PointSet, linkage: Linkage, target: usize) -> Result<Clustering> {
    if target == 0 || target > ps.len() {
        return Err(Error::TargetOutOfRange {
            target,
            max: ps.len(),
        });
    }
    dendrogram(ps, linkage)?.cut(target)
}

/// Active-cluster distance matrix with a cached nearest slot per row.
struct Slots {
    n: usize,
    d: Vec<f64>,
    id: Vec<usize>,
    active: Vec<bool>,
    size: Vec<usize>,
    nn: Vec<Option<usize>>,
}

#[derive(Clone, Copy)]
struct Key(f64, usize, usize);

impl Key {
    fn total_cmp(&self, other: &Key) -> Ordering {
        self.0
            .total_cmp(&other.0)
            .then(self.1.cmp(&other.1))
            .then(self.2.cmp(&other.2))
    }
}

impl Slots {
    fn get(&self, a: usize, b: usize) -> f64 {
        self.d[a * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize, v: f64) {
        self.d[a * self.n + b] = v;
        self.d[b * self.n + a] = v;
    }

    fn key(&self, a: usize, b: usize) -> Key {
        let (i, j) = (self.id[a], self.id[b]);
        Key(self.get(a, b), i.min(j), i.max(j))
    }

    fn refresh(&mut self, s: usize) {
        let mut best: Option<usize> = None;
        for t in 0..self.n {
            if t == s || !self.active[t] {
                continue;
            }
            if best.is_none_or(|b| self.key(s, t).total_cmp(&self.key(s, b)) == Ordering::Less) {
                best = Some(t);
            }
        }
        self.nn[s] = best;
    }

    fn closest_pair(&self) -> (usize, usize) {
        let mut best: Option<(usize, usize)> = None;
        for s in 0..self.n {
            if let (true, Some(t)) = (self.active[s], self.nn[s]) {
                if best.is_none_or(|(a, b)| {
                    self.key(s, t).total_cmp(&self.key(a, b)) == Ordering::Less
                }) {
                    best = Some((s, t));
                }
            }
        }
        best.expect("two active clusters remain")
    }
}
