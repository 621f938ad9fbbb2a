//! Persistent homology of point clouds under a density-scaled metric.
//!
//! The pipeline estimates the sampling density, rescales a k-nearest-neighbor
//! graph so that samples look uniform, takes shortest-path distances in that
//! graph and computes Vietoris-Rips persistence on them. Plain VR, a
//! density-weighted VR, the KNN filtration and the Euclidean Čech filtration
//! are available for comparison.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod datasets;
pub mod density;
pub mod diagram_metrics;
pub mod error;
pub mod filtration;
pub mod io;
pub mod persistence;
pub mod pipeline;
pub mod plot;
pub mod point_cloud;
pub mod rng;
pub mod scaled_metric;

pub use error::{Error, Result};
pub use point_cloud::PointCloud;
