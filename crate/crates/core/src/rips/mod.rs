//! Vietoris–Rips filtrations and persistence diagrams over GF(2).
//!
//! Infinite bars carry `f64::INFINITY` as their death. Anything that needs a
//! bounded support (landscapes, plots) truncates them to the filtration's
//! `max_scale`; see [`Interval::truncated_death`].

mod complex;
mod diagram;
mod distance;
mod reduction;

pub use complex::{build_rips, FilteredComplex, Simplex, DEFAULT_SIMPLEX_CAP};
pub use diagram::{betti_rank, Interval, PersistenceDiagram};
pub use distance::{distance_matrix, DistanceMatrix};
pub use reduction::{compute_persistence, compute_persistence_with, ReductionMode};

use crate::sampling::PointCloud;
use crate::Result;

/// Cloud → distance matrix → Rips complex → diagram, with default settings.
pub fn diagram_of_cloud(
    cloud: &PointCloud,
    max_scale: f64,
    max_homology_dim: usize,
) -> Result<PersistenceDiagram> {
    let dm = distance_matrix(cloud)?;
    let fc = build_rips(&dm, max_scale, max_homology_dim, DEFAULT_SIMPLEX_CAP)?;
    Ok(compute_persistence(&fc))
}
