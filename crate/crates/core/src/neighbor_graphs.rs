//! The nearest-neighbor graph family.
//!
//! Each variant is a directed relation `R(p, q)` ("q is among p's k nearest",
//! "q is p's k-th nearest", or "q is p's furthest") combined over both
//! directions: OR for the plain variants, AND for the mutual ones and XOR for
//! the asymmetric ones. Distance ties follow the neighbor order's index
//! tie-break, so every relation is deterministic.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::graph::Graph;
use crate::neighbors::{furthest_neighbors, k_nearest, Strategy};

/// Default `k` for the parameterized variants.
pub const DEFAULT_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborKind {
    Nearest,
    Knn,
    Kth,
    Mutual,
    MutualK,
    MutualKth,
    Asym,
    AsymK,
    AsymKth,
    Furthest,
}

impl NeighborKind {
    pub const ALL: [NeighborKind; 10] = [
        NeighborKind::Nearest,
        NeighborKind::Knn,
        NeighborKind::Kth,
        NeighborKind::Mutual,
        NeighborKind::MutualK,
        NeighborKind::MutualKth,
        NeighborKind::Asym,
        NeighborKind::AsymK,
        NeighborKind::AsymKth,
        NeighborKind::Furthest,
    ];

    pub fn takes_k(self) -> bool {
        !matches!(
            self,
            NeighborKind::Nearest | NeighborKind::Mutual | NeighborKind::Asym | NeighborKind::Furthest
        )
    }

    pub fn id(self) -> &'static str {
        match self {
            NeighborKind::Nearest => "nearest",
            NeighborKind::Knn => "knn",
            NeighborKind::Kth => "kth",
            NeighborKind::Mutual => "mutual",
            NeighborKind::MutualK => "mutual-k",
            NeighborKind::MutualKth => "mutual-kth",
            NeighborKind::Asym => "asym",
            NeighborKind::AsymK => "asym-k",
            NeighborKind::AsymKth => "asym-kth",
            NeighborKind::Furthest => "furthest",
        }
    }

    fn relation(self) -> Relation {
        use NeighborKind::*;
        match self {
            Nearest | Knn | Mutual | MutualK | Asym | AsymK => Relation::AmongNearest,
            Kth | MutualKth | AsymKth => Relation::KthNearest,
            Furthest => Relation::Furthest,
        }
    }

    fn combine(self) -> Combine {
        use NeighborKind::*;
        match self {
            Nearest | Knn | Kth | Furthest => Combine::Either,
            Mutual | MutualK | MutualKth => Combine::Both,
            Asym | AsymK | AsymKth => Combine::ExactlyOne,
        }
    }
}

impl fmt::Display for NeighborKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NeighborKind {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        NeighborKind::ALL.into_iter().find(|k| k.id() == s).ok_or(())
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Relation {
    AmongNearest,
    KthNearest,
    Furthest,
}

#[derive(Clone, Copy)]
enum Combine {
    Either,
    Both,
    ExactlyOne,
}

/// A variant together with its `k`, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NeighborVariant {
    kind: NeighborKind,
    k: Option<usize>,
}

impl NeighborVariant {
    /// `k` is required (and at least 1) exactly for the k-parameterized kinds.
    pub fn new(kind: NeighborKind, k: Option<usize>) -> Result<Self> {
        match (kind.takes_k(), k) {
            (true, Some(k)) if k >= 1 => Ok(NeighborVariant { kind, k: Some(k) }),
            (true, Some(_)) => Err(Error::invalid("k", "must be at least 1")),
            (true, None) => Err(Error::invalid("k", format!("required by {kind}"))),
            (false, None) => Ok(NeighborVariant { kind, k: None }),
            (false, Some(_)) => Err(Error::invalid("k", format!("{kind} takes no k"))),
        }
    }

    pub fn plain(kind: NeighborKind) -> Result<Self> {
        Self::new(kind, None)
    }

    pub fn with_k(kind: NeighborKind, k: usize) -> Result<Self> {
        Self::new(kind, Some(k))
    }

    pub fn kind(&self) -> NeighborKind {
        self.kind
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// `k` as used by the relation: 1 for the unparameterized kinds.
    fn effective_k(&self) -> usize {
        self.k.unwrap_or(1)
    }
}

/// Builds the undirected neighbor graph for `variant`.
pub fn neighbor_graph(ps: &PointSet, variant: NeighborVariant) -> Result<Graph> {
    neighbor_graph_with(ps, variant, Strategy::Auto)
}

pub fn neighbor_graph_with(
    ps: &PointSet,
    variant: NeighborVariant,
    strategy: Strategy,
) -> Result<Graph> {
    ps.ensure_at_least(2)?;
    ps.ensure_distinct()?;
    let n = ps.len();
    let k = variant.effective_k();
    if variant.kind.relation() != Relation::Furthest && k > n - 1 {
        return Err(Error::KOutOfRange { k, max: n - 1 });
    }

    // Directed arcs p -> q of the relation R.
    let arcs: Vec<(usize, usize)> = match variant.kind.relation() {
        Relation::AmongNearest => k_nearest(ps, k, strategy)?
            .into_iter()
            .enumerate()
            .flat_map(|(p, row)| row.into_iter().map(move |q| (p, q)))
            .collect(),
        Relation::KthNearest => k_nearest(ps, k, strategy)?
            .into_iter()
            .enumerate()
            .map(|(p, row)| (p, row[k - 1]))
            .collect(),
        Relation::Furthest => furthest_neighbors(ps)?.into_iter().enumerate().collect(),
    };
    let arc_set: HashSet<(usize, usize)> = arcs.iter().copied().collect();

    let mut g = Graph::undirected(n);
    for &(p, q) in &arcs {
        let back = arc_set.contains(&(q, p));
        let keep = match variant.kind.combine() {
            Combine::Either => true,
            Combine::Both => back,
            Combine::ExactlyOne => !back,
        };
        if keep {
            g.add_edge(p, q);
        }
    }
    Ok(g)
}
