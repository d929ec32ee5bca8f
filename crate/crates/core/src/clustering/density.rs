use std::collections::VecDeque;

use super::{Clustering, DEFAULT_MIN_PTS};
use crate::error::{Error, Result};
use crate::geometry::{distance2, Point2, PointSet};
use crate::graph::UnionFind;
use crate::neighbors::{range_neighbors, Strategy, WindowIndex};

/// Default iteration cap for mean shift.
pub const DEFAULT_MEAN_SHIFT_MAX_ITER: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbscanParams {
    pub epsilon: f64,
    /// Minimum neighborhood size of a core point, the point itself included.
    pub min_pts: usize,
}

impl DbscanParams {
    pub fn new(epsilon: f64) -> Self {
        DbscanParams {
            epsilon,
            min_pts: DEFAULT_MIN_PTS,
        }
    }
}

pub fn dbscan(ps: &PointSet, params: DbscanParams) -> Result<Clustering> {
    dbscan_with(ps, params, Strategy::Auto)
}

/// DBSCAN. Clusters grow from core points in ascending index order; a border
/// point reachable from several clusters joins the first one to reach it.
pub fn dbscan_with(ps: &PointSet, params: DbscanParams, strategy: Strategy) -> Result<Clustering> {
    if params.min_pts == 0 {
        return Err(Error::invalid("min_pts", "must be at least 1"));
    }
    ps.ensure_at_least(1)?;
    let nbrs = range_neighbors(ps, params.epsilon, strategy)?;
    let n = ps.len();
    let core: Vec<bool> = nbrs.iter().map(|r| r.len() + 1 >= params.min_pts).collect();

    let mut raw: Vec<Option<usize>> = vec![None; n];
    let mut next = 0;
    for seed in 0..n {
        if !core[seed] || raw[seed].is_some() {
            continue;
        }
        raw[seed] = Some(next);
        let mut queue = VecDeque::from([seed]);
        while let Some(p) = queue.pop_front() {
            for &q in &nbrs[p] {
                if raw[q].is_none() {
                    raw[q] = Some(next);
                    if core[q] {
                        queue.push_back(q);
                    }
                }
            }
        }
        next += 1;
    }
    Ok(Clustering::from_raw(&raw, None, None))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanShiftParams {
    pub bandwidth: f64,
    pub max_iter: usize,
    /// Converged positions this close end up in the same mode. Defaults to
    /// `bandwidth / 20`.
    pub merge_tol: Option<f64>,
}

impl MeanShiftParams {
    pub fn new(bandwidth: f64) -> Self {
        MeanShiftParams {
            bandwidth,
            max_iter: DEFAULT_MEAN_SHIFT_MAX_ITER,
            merge_tol: None,
        }
    }

    pub fn tolerance(&self) -> f64 {
        self.merge_tol.unwrap_or(self.bandwidth / 20.0)
    }
}

#[derive(Debug, Clone)]
pub struct MeanShiftRun {
    pub clustering: Clustering,
    /// Where each point's trajectory ended.
    pub converged: Vec<Point2>,
    /// Shift steps taken per point.
    pub steps: Vec<usize>,
}

pub fn mean_shift(ps: &PointSet, params: MeanShiftParams) -> Result<Clustering> {
    Ok(mean_shift_traced(ps, params, Strategy::Auto)?.clustering)
}

/// Flat-kernel mean shift. Every point climbs to a mode by repeatedly moving
/// to the mean of the data within `bandwidth`; nearby end positions are then
/// merged by single linkage at the merge tolerance, and each cluster reports
/// the mean of its members' end positions as its center.
pub fn mean_shift_traced(
    ps: &PointSet,
    params: MeanShiftParams,
    strategy: Strategy,
) -> Result<MeanShiftRun> {
    let h = params.bandwidth;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid("bandwidth", format!("must be positive and finite, got {h}")));
    }
    let tol = params.tolerance();
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("merge_tol", format!("must be positive and finite, got {tol}")));
    }
    if params.max_iter == 0 {
        return Err(Error::invalid("max_iter", "must be at least 1"));
    }
    ps.ensure_at_least(1)?;
    ps.ensure_distinct()?;

    let index = WindowIndex::new(ps, h, strategy);
    let stop2 = (tol / 10.0) * (tol / 10.0);
    let mut converged = Vec::with_capacity(ps.len());
    let mut steps = Vec::with_capacity(ps.len());
    for &start in ps.iter() {
        let mut x = start;
        let mut taken = 0;
        while taken < params.max_iter {
            let window = index.query(x);
            if window.is_empty() {
                break;
            }
            let m = mean(window.iter().map(|&j| ps[j]));
            taken += 1;
            let moved = distance2(m, x);
            x = m;
            if moved < stop2 {
                break;
            }
        }
        converged.push(x);
        steps.push(taken);
    }

    let ends = PointSet::new(converged.clone())?;
    let mut uf = UnionFind::new(ends.len());
    let close = WindowIndex::new(&ends, tol, strategy);
    for (i, &p) in ends.iter().enumerate() {
        for j in close.query(p) {
            uf.union(i, j);
        }
    }
    let roots: Vec<usize> = (0..ends.len()).map(|i| uf.find(i)).collect();
    let mut centers = vec![Point2::default(); ends.len()];
    let mut groups: Vec<Vec<Point2>> = vec![Vec::new(); ends.len()];
    for (i, &r) in roots.iter().enumerate() {
        groups[r].push(converged[i]);
    }
    for (r, g) in groups.iter().enumerate() {
        if !g.is_empty() {
            centers[r] = mean(g.iter().copied());
        }
    }
    let raw: Vec<Option<usize>> = roots.into_iter().map(Some).collect();
    Ok(MeanShiftRun {
        clustering: Clustering::from_raw(&raw, Some(centers), None),
        converged,
        steps,
    })
}

fn mean(points: impl Iterator<Item = Point2>) -> Point2 {
    let (mut sx, mut sy, mut c) = (0.0, 0.0, 0usize);
    for p in points {
        sx += p.x;
        sy += p.y;
        c += 1;
    }
    Point2::new(sx / c as f64, sy / c as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(coords: &[(f64, f64)]) -> PointSet {
        PointSet::from_xy(coords).unwrap()
    }

    #[test]
    fn dbscan_line_with_outlier() {
        let p = ps(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (10.0, 0.0)]);
        let c = dbscan(&p, DbscanParams { epsilon: 1.0, min_pts: 3 }).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 0, -1]);
        let c = dbscan(&p, DbscanParams { epsilon: 1.0, min_pts: 4 }).unwrap();
        assert_eq!(c.signed_labels(), vec![-1; 4]);
        let c = dbscan(&p, DbscanParams { epsilon: 1.0, min_pts: 1 }).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn border_point_joins_first_cluster() {
        let p = ps(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0), (-1.0, 0.0), (5.0, 0.0)]);
        let c = dbscan(&p, DbscanParams { epsilon: 1.0, min_pts: 3 }).unwrap();
        assert_eq!(c.cluster_count(), 1);

        // x = 1.8 is within eps of a core in each blob but is not core itself
        let left = [0.0, 0.3, 0.6, 0.9];
        let right = [2.7, 3.0, 3.3, 3.6];
        let params = DbscanParams { epsilon: 0.95, min_pts: 4 };
        let xs: Vec<(f64, f64)> = left.iter().chain(&[1.8]).chain(&right).map(|&x| (x, 0.0)).collect();
        let c = dbscan(&ps(&xs), params).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 0, 0, 0, 1, 1, 1, 1]);
        let xs: Vec<(f64, f64)> = right.iter().chain(&[1.8]).chain(&left).map(|&x| (x, 0.0)).collect();
        let c = dbscan(&ps(&xs), params).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 0, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn dbscan_square_and_far_point() {
        let p = ps(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (50.0, 50.0)]);
        let c = dbscan(&p, DbscanParams { epsilon: 1.5, min_pts: 3 }).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 0, 0, -1]);
    }

    #[test]
    fn dbscan_errors() {
        let p = ps(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(dbscan(&p, DbscanParams { epsilon: 0.0, min_pts: 3 }).is_err());
        assert!(dbscan(&p, DbscanParams { epsilon: 1.0, min_pts: 0 }).is_err());
        assert!(dbscan(&ps(&[]), DbscanParams::new(1.0)).is_err());
    }

    #[test]
    fn mean_shift_two_blobs() {
        let p = ps(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (0.0, 1.0),
            (1.0, 1.0),
            (20.0, 20.0),
            (21.0, 20.0),
            (20.0, 21.0),
            (21.0, 21.0),
        ]);
        let run = mean_shift_traced(&p, MeanShiftParams::new(3.0), Strategy::Auto).unwrap();
        assert_eq!(run.clustering.signed_labels(), vec![0, 0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(
            run.clustering.centers().unwrap(),
            &[Point2::new(0.5, 0.5), Point2::new(20.5, 20.5)]
        );
    }

    #[test]
    fn mean_shift_pairs_settle_on_their_means() {
        let p = ps(&[(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (11.0, 0.0)]);
        let params = MeanShiftParams { bandwidth: 2.0, max_iter: 300, merge_tol: Some(0.01) };
        let c = mean_shift(&p, params).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 1, 1]);
        assert_eq!(c.centers().unwrap(), &[Point2::new(0.5, 0.0), Point2::new(10.5, 0.0)]);
    }

    #[test]
    fn mean_shift_wide_bandwidth_finds_the_global_mean() {
        let p = ps(&[(0.0, 0.0), (4.0, 0.0), (2.0, 6.0)]);
        let c = mean_shift(&p, MeanShiftParams::new(100.0)).unwrap();
        assert_eq!(c.signed_labels(), vec![0, 0, 0]);
        assert_eq!(c.centers().unwrap(), &[Point2::new(2.0, 2.0)]);
    }

    #[test]
    fn mean_shift_tiny_bandwidth_keeps_singletons() {
        let p = ps(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        let run = mean_shift_traced(&p, MeanShiftParams::new(0.5), Strategy::Auto).unwrap();
        assert_eq!(run.clustering.signed_labels(), vec![0, 1, 2]);
        assert_eq!(run.clustering.centers().unwrap(), p.points());
        assert_eq!(run.steps, vec![1, 1, 1]);
    }

    #[test]
    fn mean_shift_grid_matches_brute() {
        let coords: Vec<(f64, f64)> = (0..400)
            .map(|i| ((i * 37 % 101) as f64 * 0.7, (i * 53 % 97) as f64 * 0.9))
            .collect();
        let p = ps(&coords);
        let a = mean_shift_traced(&p, MeanShiftParams::new(6.0), Strategy::Grid).unwrap();
        let b = mean_shift_traced(&p, MeanShiftParams::new(6.0), Strategy::BruteForce).unwrap();
        assert_eq!(a.clustering, b.clustering);
    }

    #[test]
    fn mean_shift_errors() {
        let p = ps(&[(0.0, 0.0)]);
        assert!(mean_shift(&p, MeanShiftParams::new(0.0)).is_err());
        assert!(mean_shift(&p, MeanShiftParams::new(f64::NAN)).is_err());
        let mut bad = MeanShiftParams::new(1.0);
        bad.max_iter = 0;
        assert!(mean_shift(&p, bad).is_err());
        bad = MeanShiftParams::new(1.0);
        bad.merge_tol = Some(-1.0);
        assert!(mean_shift(&p, bad).is_err());
    }
}
