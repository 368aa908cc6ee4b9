use std::cmp::Ordering;

use super::DistanceMatrix;
use crate::{Error, Result};

/// Default upper bound on the number of simplices in a Rips complex.
pub const DEFAULT_SIMPLEX_CAP: usize = 5_000_000;

/// A vertex, edge or triangle with its Rips filtration value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex {
    vertices: [u32; 3],
    dim: u8,
    /// Largest pairwise distance among the vertices; 0 for vertices.
    pub value: f64,
}

impl Simplex {
    fn vertex(v: u32) -> Self {
        Self {
            vertices: [v, 0, 0],
            dim: 0,
            value: 0.0,
        }
    }

    fn edge(a: u32, b: u32, value: f64) -> Self {
        Self {
            vertices: [a, b, 0],
            dim: 1,
            value,
        }
    }

    fn triangle(a: u32, b: u32, c: u32, value: f64) -> Self {
        Self {
            vertices: [a, b, c],
            dim: 2,
            value,
        }
    }

    /// Vertex indices, ascending.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices[..=self.dim as usize]
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    fn filtration_cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.dim.cmp(&other.dim))
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

/// Simplices of a Rips complex sorted by (value, dimension, vertices).
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    n_vertices: usize,
    max_dim: usize,
    pub max_scale: f64,
}

impl FilteredComplex {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Highest simplex dimension that was enumerated (homology dim + 1).
    pub fn max_simplex_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn count_in_dim(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == dim).count()
    }
}

/// Every simplex of dimension at most `max_homology_dim + 1` whose diameter
/// is at most `max_scale`.
///
/// Fails with [`Error::SimplexCap`] as soon as the count would pass `cap`.
pub fn build_rips(
    dm: &DistanceMatrix,
    max_scale: f64,
    max_homology_dim: usize,
    cap: usize,
) -> Result<FilteredComplex> {
    if !(max_scale > 0.0) || max_scale.is_nan() {
        return Err(Error::domain(format!(
            "max_scale must be positive, got {max_scale}"
        )));
    }
    if max_homology_dim > 1 {
        return Err(Error::domain(format!(
            "homology dimension {max_homology_dim} unsupported (0 or 1)"
        )));
    }
    let n = dm.len();
    if n > u32::MAX as usize {
        return Err(Error::SimplexCap { cap });
    }
    let check = |count: usize| {
        if count > cap {
            Err(Error::SimplexCap { cap })
        } else {
            Ok(())
        }
    };
    check(n)?;

    let mut simplices: Vec<Simplex> = (0..n as u32).map(Simplex::vertex).collect();
    for i in 0..n {
        let row = dm.row(i);
        for (j, &d) in row.iter().enumerate().skip(i + 1) {
            if d <= max_scale {
                simplices.push(Simplex::edge(i as u32, j as u32, d));
                check(simplices.len())?;
            }
        }
    }

    if max_homology_dim >= 1 {
        let n_edges = simplices.len() - n;
        for e in n..n + n_edges {
            let [a, b, _] = simplices[e].vertices;
            let (a, b) = (a as usize, b as usize);
            let dab = simplices[e].value;
            let (ra, rb) = (dm.row(a), dm.row(b));
            for c in (b + 1)..n {
                let (dac, dbc) = (ra[c], rb[c]);
                if dac <= max_scale && dbc <= max_scale {
                    let value = dab.max(dac).max(dbc);
                    simplices.push(Simplex::triangle(a as u32, b as u32, c as u32, value));
                    check(simplices.len())?;
                }
            }
        }
    }

    simplices.sort_unstable_by(Simplex::filtration_cmp);
    Ok(FilteredComplex {
        simplices,
        n_vertices: n,
        max_dim: max_homology_dim + 1,
        max_scale,
    })
}
