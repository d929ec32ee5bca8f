//! Definition-literal reference implementations: slow, direct evaluations of
//! each graph's defining predicate, sharing no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Pt = (f64, f64);
pub type Edges = BTreeSet<(usize, usize)>;

pub fn d2(p: Pt, q: Pt) -> f64 {
    (p.0 - q.0) * (p.0 - q.0) + (p.1 - q.1) * (p.1 - q.1)
}

pub fn d(p: Pt, q: Pt) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Other points ordered by (distance, index).
pub fn ranked(ps: &[Pt], i: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..ps.len()).filter(|&j| j != i).collect();
    v.sort_by(|&a, &b| d2(ps[i], ps[a]).total_cmp(&d2(ps[i], ps[b])).then(a.cmp(&b)));
    v
}

/// `q` is among the `k` nearest of `p`.
pub fn among_k(ps: &[Pt], p: usize, q: usize, k: usize) -> bool {
    ranked(ps, p)[..k].contains(&q)
}

pub fn kth_is(ps: &[Pt], p: usize, q: usize, k: usize) -> bool {
    ranked(ps, p)[k - 1] == q
}

/// Furthest neighbor, highest index on ties.
pub fn furthest_is(ps: &[Pt], p: usize, q: usize) -> bool {
    let best = (0..ps.len())
        .filter(|&j| j != p)
        .max_by(|&a, &b| d2(ps[p], ps[a]).total_cmp(&d2(ps[p], ps[b])).then(a.cmp(&b)))
        .unwrap();
    best == q
}

/// Neighbor graph family by identifier: relation R(p, q), then OR / AND / XOR
/// of R(p, q) and R(q, p).
pub fn neighbor(ps: &[Pt], id: &str, k: usize) -> Edges {
    let n = ps.len();
    let rank: Vec<Vec<usize>> = (0..n).map(|i| ranked(ps, i)).collect();
    let rel = |p: usize, q: usize| -> bool {
        match id {
            "nearest" | "mutual" | "asym" => rank[p][0] == q,
            "knn" | "mutual-k" | "asym-k" => rank[p][..k].contains(&q),
            "kth" | "mutual-kth" | "asym-kth" => rank[p][k - 1] == q,
            "furthest" => furthest_is(ps, p, q),
            _ => panic!("unknown neighbor graph {id}"),
        }
    };
    let mut out = Edges::new();
    for p in 0..n {
        for q in p + 1..n {
            let (a, b) = (rel(p, q), rel(q, p));
            let keep = if id.starts_with("mutual") {
                a && b
            } else if id.starts_with("asym") {
                a != b
            } else {
                a || b
            };
            if keep {
                out.insert((p, q));
            }
        }
    }
    out
}

pub fn gabriel(ps: &[Pt]) -> Edges {
    let n = ps.len();
    let mut out = Edges::new();
    for p in 0..n {
        for q in p + 1..n {
            let dpq = d2(ps[p], ps[q]);
            if (0..n).all(|r| r == p || r == q || d2(ps[p], ps[r]) + d2(ps[q], ps[r]) > dpq) {
                out.insert((p, q));
            }
        }
    }
    out
}

pub fn rng(ps: &[Pt]) -> Edges {
    let n = ps.len();
    let mut out = Edges::new();
    for p in 0..n {
        for q in p + 1..n {
            let dpq = d2(ps[p], ps[q]);
            if (0..n).all(|r| r == p || r == q || d2(ps[p], ps[r]).max(d2(ps[q], ps[r])) >= dpq) {
                out.insert((p, q));
            }
        }
    }
    out
}

pub fn soi(ps: &[Pt]) -> Edges {
    let n = ps.len();
    let radius: Vec<f64> = (0..n).map(|i| d(ps[i], ps[ranked(ps, i)[0]])).collect();
    let mut out = Edges::new();
    for p in 0..n {
        for q in p + 1..n {
            if d(ps[p], ps[q]) <= radius[p] + radius[q] {
                out.insert((p, q));
            }
        }
    }
    out
}

pub fn epsilon(ps: &[Pt], eps: f64) -> Edges {
    let n = ps.len();
    let mut out = Edges::new();
    for p in 0..n {
        for q in p + 1..n {
            if d2(ps[p], ps[q]) <= eps * eps {
                out.insert((p, q));
            }
        }
    }
    out
}

/// Yao: from each point, the nearest other point (ties by index) in each of
/// `k` equal cones starting at angle 0.
pub fn yao(ps: &[Pt], k: usize) -> Edges {
    let n = ps.len();
    let width = 2.0 * std::f64::consts::PI / k as f64;
    let mut out = Edges::new();
    for p in 0..n {
        for cone in 0..k {
            let best = ranked(ps, p).into_iter().find(|&q| {
                let mut a = (ps[q].1 - ps[p].1).atan2(ps[q].0 - ps[p].0);
                if a < 0.0 {
                    a += 2.0 * std::f64::consts::PI;
                }
                ((a / width).floor() as usize).min(k - 1) == cone
            });
            if let Some(q) = best {
                out.insert(edge(p, q));
            }
        }
    }
    out
}

/// Delaunay edges for points in general position: `pq` is an edge iff some
/// circle through `p` and `q` has no point inside. Circle centers lie on the
/// bisector `m + t n`; each other point bounds `t` from one side.
pub fn delaunay(ps: &[Pt]) -> Edges {
    let n = ps.len();
    let mut out = Edges::new();
    for p in 0..n {
        for q in p + 1..n {
            let m = ((ps[p].0 + ps[q].0) / 2.0, (ps[p].1 + ps[q].1) / 2.0);
            let nrm = (-(ps[q].1 - ps[p].1), ps[q].0 - ps[p].0);
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            let mut blocked = false;
            for r in (0..n).filter(|&r| r != p && r != q) {
                let a = d2(m, ps[r]) - d2(m, ps[p]);
                let b = nrm.0 * (ps[p].0 - ps[r].0) + nrm.1 * (ps[p].1 - ps[r].1);
                // r is strictly inside the circle with center m + t nrm iff a + 2 t b < 0
                if b > 0.0 {
                    lo = lo.max(-a / (2.0 * b));
                } else if b < 0.0 {
                    hi = hi.min(-a / (2.0 * b));
                } else if a < 0.0 {
                    blocked = true;
                }
            }
            if !blocked && lo <= hi {
                out.insert((p, q));
            }
        }
    }
    out
}

fn in_circumcircle(a: Pt, b: Pt, c: Pt, x: Pt) -> bool {
    let (ax, ay) = (a.0 - x.0, a.1 - x.1);
    let (bx, by) = (b.0 - x.0, b.1 - x.1);
    let (cx, cy) = (c.0 - x.0, c.1 - x.1);
    let det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay);
    let orient = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    det * orient.signum() > 0.0
}

/// Delaunay triangles: mutually adjacent triples with an empty circumcircle.
pub fn delaunay_triangles(ps: &[Pt]) -> Vec<[usize; 3]> {
    let edges = delaunay(ps);
    let n = ps.len();
    let mut out = Vec::new();
    for &(a, b) in &edges {
        for c in b + 1..n {
            if edges.contains(&(a, c)) && edges.contains(&(b, c)) {
                let (pa, pb, pc) = (ps[a], ps[b], ps[c]);
                let area = (pb.0 - pa.0) * (pc.1 - pa.1) - (pb.1 - pa.1) * (pc.0 - pa.0);
                if area != 0.0 && (0..n).all(|x| x == a || x == b || x == c || !in_circumcircle(pa, pb, pc, ps[x])) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Delaunay minus the longest side of every triangle.
pub fn urquhart(ps: &[Pt]) -> Edges {
    let mut out = delaunay(ps);
    for [a, b, c] in delaunay_triangles(ps) {
        let sides = [edge(a, b), edge(b, c), edge(a, c)];
        let longest = sides
            .into_iter()
            .max_by(|&e, &f| d2(ps[e.0], ps[e.1]).total_cmp(&d2(ps[f.0], ps[f.1])).then(f.cmp(&e)))
            .unwrap();
        out.remove(&longest);
    }
    out
}

/// Kruskal over all pairs in (squared length, index pair) order.
pub fn emst(ps: &[Pt]) -> Edges {
    let n = ps.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.sort_by(|&e, &f| d2(ps[e.0], ps[e.1]).total_cmp(&d2(ps[f.0], ps[f.1])).then(e.cmp(&f)));
    let mut comp: Vec<usize> = (0..n).collect();
    let mut out = Edges::new();
    for (a, b) in pairs {
        let (ca, cb) = (comp[a], comp[b]);
        if ca != cb {
            for c in comp.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            out.insert((a, b));
        }
    }
    out
}

/// Connected components of an edge set, as a partition of `0..n`.
pub fn components(n: usize, edges: &Edges) -> BTreeSet<Vec<usize>> {
    let mut comp: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            let m = comp[a].min(comp[b]);
            if comp[a] != m || comp[b] != m {
                comp[a] = m;
                comp[b] = m;
                changed = true;
            }
        }
    }
    let mut groups = std::collections::BTreeMap::<usize, Vec<usize>>::new();
    for (i, c) in comp.into_iter().enumerate() {
        groups.entry(c).or_default().push(i);
    }
    groups.into_values().collect()
}

/// A labelling as a partition; `None` entries each form no block.
pub fn partition(labels: &[Option<usize>]) -> BTreeSet<Vec<usize>> {
    let mut groups = std::collections::BTreeMap::<usize, Vec<usize>>::new();
    for (i, l) in labels.iter().enumerate() {
        if let Some(l) = l {
            groups.entry(*l).or_default().push(i);
        }
    }
    groups.into_values().collect()
}

/// Agglomerative clustering by exhaustive search: every step merges the
/// closest pair of clusters (linkage over all member pairs), ties by the
/// smallest node ids. Returns merge heights and the partition at `target`.
pub fn agglomerate(ps: &[Pt], complete: bool, target: usize) -> (Vec<f64>, BTreeSet<Vec<usize>>) {
    let n = ps.len();
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut heights = Vec::new();
    let mut at_target = None;
    let mut next_id = n;
    while clusters.len() > 1 {
        if clusters.len() == target {
            at_target = Some(clusters.clone());
        }
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for x in 0..clusters.len() {
            for y in x + 1..clusters.len() {
                let mut link: Option<f64> = None;
                for &i in &clusters[x].1 {
                    for &j in &clusters[y].1 {
                        let v = d2(ps[i], ps[j]);
                        link = Some(match link {
                            None => v,
                            Some(l) if complete => l.max(v),
                            Some(l) => l.min(v),
                        });
                    }
                }
                let (ix, iy) = (clusters[x].0, clusters[y].0);
                let key = (link.unwrap(), ix.min(iy), ix.max(iy), x, y);
                let better = match best {
                    None => true,
                    Some(b) => key.0.total_cmp(&b.0).then((key.1, key.2).cmp(&(b.1, b.2))).is_lt(),
                };
                if better {
                    best = Some(key);
                }
            }
        }
        let (h, _, _, x, y) = best.unwrap();
        heights.push(h.sqrt());
        let mut merged = clusters[x].1.clone();
        merged.extend(&clusters[y].1);
        merged.sort_unstable();
        clusters.remove(y);
        clusters[x] = (next_id, merged);
        next_id += 1;
    }
    let final_clusters = if target == 1 { clusters } else { at_target.unwrap_or(clusters) };
    (heights, final_clusters.into_iter().map(|(_, m)| m).collect())
}
