//! Batch command line and HTTP service over `proxigraph-core`.

pub mod cli;
pub mod service;
