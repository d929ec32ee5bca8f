//! Partitional, hierarchical and density-based clustering.

mod centroid;
mod density;
mod hdbscan;
mod hierarchical;

pub use centroid::{
    kmeans, kmeans_traced, kmedoids, kmedoids_traced, Init, KMeansRun, KMedoidsRun,
    DEFAULT_MAX_ITER,
};
pub use density::{
    dbscan, dbscan_with, mean_shift, mean_shift_traced, DbscanParams, MeanShiftParams,
    MeanShiftRun, DEFAULT_MEAN_SHIFT_MAX_ITER,
};
pub use hdbscan::{hdbscan, hdbscan_detailed, CondensedRow, HdbscanOutcome, HdbscanParams};
pub use hierarchical::{agglomerate, dendrogram, Dendrogram, Linkage, Merge};

use rand::SeedableRng;
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

/// Default minimum neighborhood size for the density-based methods.
pub const DEFAULT_MIN_PTS: usize = 3;

/// Seed of the SplitMix64 stream behind every random choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub(crate) fn stream(self) -> SplitMix64 {
        SplitMix64::seed_from_u64(self.0)
    }
}

/// A cluster label per point; `None` is noise.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Clustering {
    labels: Vec<Option<usize>>,
    count: usize,
    centers: Option<Vec<Point2>>,
    medoids: Option<Vec<usize>>,
}

impl Clustering {
    /// Renumbers clusters by their lowest member index. `centers` and
    /// `medoids`, when given, are indexed by the raw labels and are reordered
    /// to match. Raw labels with no members are dropped.
    pub(crate) fn from_raw(
        raw: &[Option<usize>],
        centers: Option<Vec<Point2>>,
        medoids: Option<Vec<usize>>,
    ) -> Clustering {
        let raw_count = raw.iter().flatten().map(|&l| l + 1).max().unwrap_or(0);
        let mut remap = vec![None; raw_count];
        let mut order = Vec::new();
        for l in raw.iter().flatten() {
            if remap[*l].is_none() {
                remap[*l] = Some(order.len());
                order.push(*l);
            }
        }
        let labels = raw.iter().map(|l| l.and_then(|l| remap[l])).collect();
        Clustering {
            labels,
            count: order.len(),
            centers: centers.map(|c| order.iter().map(|&l| c[l]).collect()),
            medoids: medoids.map(|m| order.iter().map(|&l| m[l]).collect()),
        }
    }

    pub fn all_noise(n: usize) -> Clustering {
        Clustering {
            labels: vec![None; n],
            ..Default::default()
        }
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Option<usize> {
        self.labels[i]
    }

    pub fn cluster_count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }

    pub fn centers(&self) -> Option<&[Point2]> {
        self.centers.as_deref()
    }

    pub fn medoids(&self) -> Option<&[usize]> {
        self.medoids.as_deref()
    }

    /// Member indices of each cluster, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                out[*l].push(i);
            }
        }
        out
    }

    /// Labels as signed integers with `-1` for noise.
    pub fn signed_labels(&self) -> Vec<i64> {
        self.labels
            .iter()
            .map(|l| l.map_or(-1, |l| l as i64))
            .collect()
    }
}
