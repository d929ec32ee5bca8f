//! Neighborhood graphs and clusterings of planar point sets, with Ipe XML and
//! SVG rendering.

pub mod clustering;
pub mod compute;
pub mod delaunay;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod mst;
pub mod neighbor_graphs;
pub mod neighbors;
pub mod proximity;

pub use clustering::Clustering;
pub use delaunay::{delaunay, Triangulation};
pub use error::{Error, Result};
pub use geometry::{distance, Point2, PointSet};
pub use graph::Graph;
pub use neighbors::{neighbor_order, NeighborOrder, Strategy};
