use crate::sampling::PointCloud;
use crate::{Error, Result};

/// Dense symmetric matrix of pairwise Euclidean distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds from explicit entries, checking symmetry, zero diagonal and
    /// non-negativity.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::domain(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(Error::domain(format!("diagonal entry {i} is not zero")));
            }
            for j in 0..i {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                if a != b {
                    return Err(Error::domain(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
                if !(a >= 0.0 && a.is_finite()) {
                    return Err(Error::domain(format!(
                        "entry ({i},{j}) is negative or not finite"
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

/// Pairwise Euclidean distances of a nonempty cloud.
///
/// Each unordered pair is computed once and mirrored, so the result is
/// exactly symmetric.
pub fn distance_matrix(cloud: &PointCloud) -> Result<DistanceMatrix> {
    let n = cloud.len();
    if n == 0 {
        return Err(Error::domain("distance matrix of an empty cloud"));
    }
    let pts = cloud.points();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = pts[i]
                .iter()
                .zip(&pts[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { n, entries })
}
