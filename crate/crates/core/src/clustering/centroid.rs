use rand::seq::index::sample;
use rand::RngExt;

use super::{Clustering, RngSeed};
use crate::error::{Error, Result};
use crate::geometry::{distance, distance2, exact_sum, Point2, PointSet};

/// Default iteration cap for k-means and k-medoids.
pub const DEFAULT_MAX_ITER: usize = 100;

/// How k-means picks its initial centroids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Init {
    /// `k` distinct data points, uniformly without replacement.
    Uniform,
    /// k-means++: each further centroid drawn with probability proportional
    /// to the squared distance to the nearest centroid chosen so far.
    PlusPlus,
}

/// k-means result together with the objective after every half-step
/// (assignment, then centroid update, alternating).
#[derive(Debug, Clone)]
pub struct KMeansRun {
    pub clustering: Clustering,
    pub cost_trace: Vec<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct KMedoidsRun {
    pub clustering: Clustering,
    pub cost_trace: Vec<f64>,
    pub iterations: usize,
}

fn validate(ps: &PointSet, k: usize, max_iter: usize) -> Result<()> {
    ps.ensure_at_least(1)?;
    if k == 0 || k > ps.len() {
        return Err(Error::KOutOfRange { k, max: ps.len() });
    }
    if max_iter == 0 {
        return Err(Error::invalid("max_iter", "must be at least 1"));
    }
    ps.ensure_distinct()
}

/// Index of the nearest center; ties go to the lowest index.
fn nearest<T: Copy>(p: Point2, centers: &[T], dist: impl Fn(Point2, T) -> f64) -> usize {
    let mut best = 0;
    let mut best_d = dist(p, centers[0]);
    for (j, &c) in centers.iter().enumerate().skip(1) {
        let d = dist(p, c);
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    best
}

fn sse(ps: &PointSet, labels: &[usize], centroids: &[Point2]) -> f64 {
    exact_sum(ps.iter().zip(labels).map(|(&p, &l)| distance2(p, centroids[l])))
}

fn initial_centroids(ps: &PointSet, k: usize, init: Init, seed: RngSeed) -> Vec<Point2> {
    let mut rng = seed.stream();
    let n = ps.len();
    match init {
        Init::Uniform => sample(&mut rng, n, k).into_iter().map(|i| ps[i]).collect(),
        Init::PlusPlus => {
            let mut chosen = vec![ps[rng.random_range(0..n)]];
            let mut weight: Vec<f64> = ps.iter().map(|&p| distance2(p, chosen[0])).collect();
            while chosen.len() < k {
                let total: f64 = weight.iter().sum();
                let target = rng.random::<f64>() * total;
                let mut acc = 0.0;
                let mut pick = None;
                for (i, &w) in weight.iter().enumerate() {
                    if w <= 0.0 {
                        continue;
                    }
                    acc += w;
                    pick = Some(i);
                    if acc > target {
                        break;
                    }
                }
                let c = ps[pick.expect("k <= n distinct points leaves a positive weight")];
                chosen.push(c);
                for (w, &p) in weight.iter_mut().zip(ps.iter()) {
                    *w = w.min(distance2(p, c));
                }
            }
            chosen
        }
    }
}

/// Lloyd's k-means from a seeded initialization, run to a label fixpoint or
/// `max_iter` rounds.
pub fn kmeans(
    ps: &PointSet,
    k: usize,
    seed: RngSeed,
    init: Init,
    max_iter: usize,
) -> Result<Clustering> {
    Ok(kmeans_traced(ps, k, seed, init, max_iter)?.clustering)
}

pub fn kmeans_traced(
    ps: &PointSet,
    k: usize,
    seed: RngSeed,
    init: Init,
    max_iter: usize,
) -> Result<KMeansRun> {
    validate(ps, k, max_iter)?;
    let mut centroids = initial_centroids(ps, k, init, seed);
    let assign = |centroids: &[Point2]| -> Vec<usize> {
        ps.iter().map(|&p| nearest(p, centroids, distance2)).collect()
    };
    let mut labels = assign(&centroids);
    let mut trace = vec![sse(ps, &labels, &centroids)];
    let mut iterations = 0;

    while iterations < max_iter {
        iterations += 1;
        update_centroids(ps, &mut labels, &mut centroids);
        trace.push(sse(ps, &labels, &centroids));
        let next = assign(&centroids);
        trace.push(sse(ps, &next, &centroids));
        let stable = next == labels;
        labels = next;
        if stable {
            break;
        }
    }

    let raw: Vec<Option<usize>> = labels.into_iter().map(Some).collect();
    Ok(KMeansRun {
        clustering: Clustering::from_raw(&raw, Some(centroids), None),
        cost_trace: trace,
        iterations,
    })
}

/// Moves every centroid to its cluster mean. An empty cluster takes over the
/// point farthest from its current centroid (ties to the lowest index).
fn update_centroids(ps: &PointSet, labels: &mut [usize], centroids: &mut [Point2]) {
    let k = centroids.len();
    let mut sum = vec![(0.0, 0.0); k];
    let mut count = vec![0usize; k];
    for (&p, &l) in ps.iter().zip(labels.iter()) {
        sum[l].0 += p.x;
        sum[l].1 += p.y;
        count[l] += 1;
    }
    for j in 0..k {
        if count[j] > 0 {
            let c = count[j] as f64;
            centroids[j] = Point2::new(sum[j].0 / c, sum[j].1 / c);
        }
    }
    for j in 0..k {
        if count[j] > 0 {
            continue;
        }
        let far = (0..ps.len())
            .max_by(|&a, &b| {
                distance2(ps[a], centroids[labels[a]])
                    .total_cmp(&distance2(ps[b], centroids[labels[b]]))
                    .then(b.cmp(&a))
            })
            .expect("non-empty point set");
        count[labels[far]] -= 1;
        labels[far] = j;
        count[j] = 1;
        centroids[j] = ps[far];
    }
}

/// Alternating k-medoids: assign to the nearest medoid, then move each
/// medoid to the member with the smallest total distance to its cluster.
pub fn kmedoids(ps: &PointSet, k: usize, seed: RngSeed, max_iter: usize) -> Result<Clustering> {
    Ok(kmedoids_traced(ps, k, seed, max_iter)?.clustering)
}

pub fn kmedoids_traced(
    ps: &PointSet,
    k: usize,
    seed: RngSeed,
    max_iter: usize,
) -> Result<KMedoidsRun> {
    validate(ps, k, max_iter)?;
    let mut rng = seed.stream();
    let mut medoids: Vec<usize> = sample(&mut rng, ps.len(), k).into_vec();

    let assign = |medoids: &[usize]| -> Vec<usize> {
        ps.iter()
            .map(|&p| nearest(p, medoids, |p, m: usize| distance2(p, ps[m])))
            .collect()
    };
    let cost = |labels: &[usize], medoids: &[usize]| -> f64 {
        exact_sum(ps.iter().zip(labels).map(|(&p, &l)| distance(p, ps[medoids[l]])))
    };

    let mut labels = assign(&medoids);
    let mut trace = vec![cost(&labels, &medoids)];
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let next: Vec<usize> = (0..k).map(|j| best_medoid(ps, &labels, j)).collect();
        trace.push(cost(&labels, &next));
        if next == medoids {
            break;
        }
        medoids = next;
        labels = assign(&medoids);
        trace.push(cost(&labels, &medoids));
    }

    let raw: Vec<Option<usize>> = labels.into_iter().map(Some).collect();
    let centers = medoids.iter().map(|&m| ps[m]).collect();
    Ok(KMedoidsRun {
        clustering: Clustering::from_raw(&raw, Some(centers), Some(medoids)),
        cost_trace: trace,
        iterations,
    })
}

/// Member of cluster `j` minimizing the sum of distances to the other
/// members; ties to the lowest index.
fn best_medoid(ps: &PointSet, labels: &[usize], j: usize) -> usize {
    let members: Vec<usize> = (0..ps.len()).filter(|&i| labels[i] == j).collect();
    let total = |m: usize| -> f64 { exact_sum(members.iter().map(|&i| ps.dist(m, i))) };
    members
        .iter()
        .map(|&m| (total(m), m))
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .map(|(_, m)| m)
        // a medoid is always nearest to itself, so no cluster is empty
        .expect("cluster keeps its medoid")
}
