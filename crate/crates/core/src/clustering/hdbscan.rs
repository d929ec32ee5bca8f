use std::collections::VecDeque;

use super::{Clustering, DEFAULT_MIN_PTS};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::graph::UnionFind;
use crate::mst::{prim, WeightedEdge};
use crate::neighbors::neighbor_order;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HdbscanParams {
    /// Neighborhood size for the core distance, the point itself included.
    pub min_pts: usize,
    /// Smallest group that counts as a cluster when condensing.
    pub min_cluster_size: usize,
}

impl HdbscanParams {
    /// `min_cluster_size` follows `min_pts`, but never drops below 2.
    pub fn new(min_pts: usize) -> Self {
        HdbscanParams {
            min_pts,
            min_cluster_size: min_pts.max(2),
        }
    }
}

impl Default for HdbscanParams {
    fn default() -> Self {
        HdbscanParams::new(DEFAULT_MIN_PTS)
    }
}

/// One row of the condensed tree. Cluster ids start at `n` (the root);
/// children below `n` are points falling out of `parent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondensedRow {
    pub parent: usize,
    pub child: usize,
    pub lambda: f64,
    pub size: usize,
}

/// Everything HDBSCAN computes on the way to its labels.
#[derive(Debug, Clone)]
pub struct HdbscanOutcome {
    pub clustering: Clustering,
    pub core_distances: Vec<f64>,
    /// Minimum spanning tree under mutual reachability distance.
    pub mst: Vec<WeightedEdge>,
    pub condensed: Vec<CondensedRow>,
    /// Stability per condensed cluster, indexed by `cluster id - n`.
    pub stability: Vec<f64>,
    /// Selected condensed cluster ids, ascending.
    pub selected: Vec<usize>,
}

pub fn hdbscan(ps: &PointSet, params: HdbscanParams) -> Result<Clustering> {
    Ok(hdbscan_detailed(ps, params)?.clustering)
}

pub fn hdbscan_detailed(ps: &PointSet, params: HdbscanParams) -> Result<HdbscanOutcome> {
    if params.min_pts == 0 {
        return Err(Error::invalid("min_pts", "must be at least 1"));
    }
    if params.min_cluster_size < 2 {
        return Err(Error::invalid("min_cluster_size", "must be at least 2"));
    }
    ps.ensure_at_least(1)?;
    ps.ensure_distinct()?;
    let n = ps.len();

    let core = core_distances(ps, params.min_pts)?;
    let mst = prim(n, |i, j| mutual_reachability(ps, &core, i, j));
    if n < params.min_cluster_size {
        return Ok(HdbscanOutcome {
            clustering: Clustering::all_noise(n),
            core_distances: core,
            mst,
            condensed: Vec::new(),
            stability: Vec::new(),
            selected: Vec::new(),
        });
    }

    let tree = single_linkage_tree(n, &mst);
    let condensed = condense(n, &tree, params.min_cluster_size);
    let clusters = condensed.iter().map(|r| r.child).filter(|&c| c >= n).max().map_or(1, |m| m - n + 1);
    let stability = stabilities(n, clusters, &condensed);
    let selected = excess_of_mass(n, clusters, &condensed, &stability);
    let clustering = label(n, &condensed, &selected);
    Ok(HdbscanOutcome {
        clustering,
        core_distances: core,
        mst,
        condensed,
        stability,
        selected,
    })
}

/// Distance to the `(min_pts - 1)`-th nearest other point; 0 when
/// `min_pts == 1`. Clamped to the farthest point on small inputs.
pub fn core_distances(ps: &PointSet, min_pts: usize) -> Result<Vec<f64>> {
    let n = ps.len();
    let k = (min_pts - 1).min(n - 1);
    if k == 0 {
        return Ok(vec![0.0; n]);
    }
    let order = neighbor_order(ps)?;
    Ok((0..n).map(|i| ps.dist(i, order.kth(i, k))).collect())
}

fn mutual_reachability(ps: &PointSet, core: &[f64], i: usize, j: usize) -> f64 {
    ps.dist(i, j).max(core[i]).max(core[j])
}

/// Merge `m` creates node `n + m` from `left` and `right`.
struct TreeNode {
    left: usize,
    right: usize,
    distance: f64,
    size: usize,
}

fn single_linkage_tree(n: usize, mst: &[WeightedEdge]) -> Vec<TreeNode> {
    let mut edges = mst.to_vec();
    edges.sort_by(|a, b| a.total_cmp(b));
    let mut uf = UnionFind::new(n);
    let mut node_of: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; 2 * n];
    let mut tree = Vec::with_capacity(n - 1);
    for (m, e) in edges.iter().enumerate() {
        let (ra, rb) = (uf.find(e.a), uf.find(e.b));
        let (left, right) = (node_of[ra], node_of[rb]);
        uf.union(ra, rb);
        let id = n + m;
        size[id] = size[left] + size[right];
        tree.push(TreeNode {
            left,
            right,
            distance: e.weight,
            size: size[id],
        });
        node_of[uf.find(ra)] = id;
    }
    tree
}

fn condense(n: usize, tree: &[TreeNode], min_size: usize) -> Vec<CondensedRow> {
    let size = |node: usize| if node < n { 1 } else { tree[node - n].size };
    let leaves = |node: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if v < n {
                out.push(v);
            } else {
                stack.push(tree[v - n].right);
                stack.push(tree[v - n].left);
            }
        }
        out.sort_unstable();
        out
    };

    let root = n + tree.len() - 1;
    let mut relabel = vec![0usize; 2 * n];
    relabel[root] = n;
    let mut next = n + 1;
    let mut rows = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(node) = queue.pop_front() {
        if node < n {
            continue;
        }
        let t = &tree[node - n];
        let lambda = 1.0 / t.distance;
        let parent = relabel[node];
        let (ls, rs) = (size(t.left), size(t.right));
        let fall_out = |child: usize, rows: &mut Vec<CondensedRow>| {
            for p in leaves(child) {
                rows.push(CondensedRow { parent, child: p, lambda, size: 1 });
            }
        };
        match (ls >= min_size, rs >= min_size) {
            (true, true) => {
                for (child, s) in [(t.left, ls), (t.right, rs)] {
                    relabel[child] = next;
                    rows.push(CondensedRow { parent, child: next, lambda, size: s });
                    next += 1;
                    queue.push_back(child);
                }
            }
            (false, false) => {
                fall_out(t.left, &mut rows);
                fall_out(t.right, &mut rows);
            }
            (true, false) => {
                relabel[t.left] = parent;
                fall_out(t.right, &mut rows);
                queue.push_back(t.left);
            }
            (false, true) => {
                relabel[t.right] = parent;
                fall_out(t.left, &mut rows);
                queue.push_back(t.right);
            }
        }
    }
    rows
}

/// Sum over rows of `(lambda - lambda_birth(parent)) * size`; the root is
/// born at lambda 0.
fn stabilities(n: usize, clusters: usize, rows: &[CondensedRow]) -> Vec<f64> {
    let mut birth = vec![0.0; clusters];
    for r in rows.iter().filter(|r| r.child >= n) {
        birth[r.child - n] = r.lambda;
    }
    let mut stability = vec![0.0; clusters];
    for r in rows {
        stability[r.parent - n] += (r.lambda - birth[r.parent - n]) * r.size as f64;
    }
    stability
}

/// Bottom-up Excess of Mass. Children always carry larger ids than their
/// parent, so a descending sweep visits children first. The root competes
/// like any other cluster.
fn excess_of_mass(n: usize, clusters: usize, rows: &[CondensedRow], stability: &[f64]) -> Vec<usize> {
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); clusters];
    for r in rows.iter().filter(|r| r.child >= n) {
        children[r.parent - n].push(r.child - n);
    }
    let mut value = stability.to_vec();
    let mut selected = vec![false; clusters];
    for c in (0..clusters).rev() {
        let below: f64 = children[c].iter().map(|&k| value[k]).sum();
        if stability[c] > below {
            selected[c] = true;
            let mut stack = children[c].clone();
            while let Some(d) = stack.pop() {
                selected[d] = false;
                stack.extend(&children[d]);
            }
        } else {
            value[c] = below;
        }
    }
    (0..clusters).filter(|&c| selected[c]).map(|c| c + n).collect()
}

/// A point belongs to its nearest selected ancestor cluster. When the root
/// itself is selected, only points that stay until the root's last
/// fall-out level are kept.
fn label(n: usize, rows: &[CondensedRow], selected: &[usize]) -> Clustering {
    let clusters = rows.iter().map(|r| r.child.max(r.parent)).max().map_or(0, |m| m + 1);
    let mut parent_of = vec![None; clusters];
    let mut point_lambda = vec![0.0; n];
    let mut root_max = 0.0f64;
    for r in rows {
        parent_of[r.child] = Some(r.parent);
        if r.child < n {
            point_lambda[r.child] = r.lambda;
        }
        if r.parent == n {
            root_max = root_max.max(r.lambda);
        }
    }
    let mut is_selected = vec![false; clusters];
    for &c in selected {
        is_selected[c] = true;
    }
    let raw: Vec<Option<usize>> = (0..n)
        .map(|p| {
            let mut c = parent_of[p];
            while let Some(cl) = c {
                if is_selected[cl] {
                    return (cl != n || point_lambda[p] >= root_max).then_some(cl);
                }
                c = parent_of[cl];
            }
            None
        })
        .collect();
    Clustering::from_raw(&raw, None, None)
}
