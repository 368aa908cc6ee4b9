use std::fmt::Write as _;
use std::path::Path;

use crate::{Error, Result};

/// A persistence interval `[birth, death)` in homology dimension `dim`.
/// Essential classes have `death == f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub dim: u8,
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn new(dim: u8, birth: f64, death: f64) -> Self {
        Self { dim, birth, death }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    /// Death with the infinite sentinel replaced by `max_scale`.
    pub fn truncated_death(&self, max_scale: f64) -> f64 {
        if self.is_essential() {
            max_scale.max(self.birth)
        } else {
            self.death
        }
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Multiset of intervals of one filtration, in canonical (dim, birth, death)
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    intervals: Vec<Interval>,
    pub max_scale: f64,
}

impl PersistenceDiagram {
    pub fn new(mut intervals: Vec<Interval>, max_scale: f64) -> Result<Self> {
        for iv in &intervals {
            if !(iv.birth >= 0.0 && iv.birth.is_finite())
                || iv.death.is_nan()
                || iv.birth > iv.death
            {
                return Err(Error::domain(format!(
                    "invalid interval (dim {}, {}, {})",
                    iv.dim, iv.birth, iv.death
                )));
            }
        }
        intervals.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        Ok(Self {
            intervals,
            max_scale,
        })
    }

    pub fn empty(max_scale: f64) -> Self {
        Self {
            intervals: Vec::new(),
            max_scale,
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn in_dim(&self, dim: u8) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |iv| iv.dim == dim)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// CSV with header `dim,birth,death`; essential deaths are written `inf`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("dim,birth,death\n");
        for iv in &self.intervals {
            if iv.is_essential() {
                let _ = writeln!(out, "{},{},inf", iv.dim, iv.birth);
            } else {
                let _ = writeln!(out, "{},{},{}", iv.dim, iv.birth, iv.death);
            }
        }
        out
    }

    pub fn from_csv_str(text: &str, max_scale: f64) -> Result<Self> {
        let mut intervals = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("dim")) {
                continue;
            }
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || Error::Format(format!("diagram line {}: {line:?}", lineno + 1));
            if cells.len() != 3 {
                return Err(bad());
            }
            let dim: u8 = cells[0].parse().map_err(|_| bad())?;
            let birth: f64 = cells[1].parse().map_err(|_| bad())?;
            let death: f64 = match cells[2] {
                "inf" | "Inf" | "INF" => f64::INFINITY,
                s => s.parse().map_err(|_| bad())?,
            };
            intervals.push(Interval::new(dim, birth, death));
        }
        Self::new(intervals, max_scale)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path, max_scale: f64) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text, max_scale)
    }
}

/// Persistent Betti number β^{b,d}: intervals in `dim` born at or before `b`
/// and dying at or after `d`.
pub fn betti_rank(diag: &PersistenceDiagram, b: f64, d: f64, dim: u8) -> Result<usize> {
    if b > d {
        return Err(Error::domain(format!(
            "betti_rank needs b <= d, got b={b}, d={d}"
        )));
    }
    Ok(diag
        .in_dim(dim)
        .filter(|iv| iv.birth <= b && iv.death >= d)
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_queries() {
        let empty = PersistenceDiagram::empty(5.0);
        assert_eq!(betti_rank(&empty, 0.0, 1.0, 1).unwrap(), 0);

        let d = PersistenceDiagram::new(vec![Interval::new(1, 1.0, 3.0)], 5.0).unwrap();
        assert_eq!(betti_rank(&d, 2.0, 2.5, 1).unwrap(), 1);
        assert_eq!(betti_rank(&d, 0.5, 2.5, 1).unwrap(), 0);
        assert_eq!(betti_rank(&d, 2.0, 2.5, 0).unwrap(), 0);
        assert!(betti_rank(&d, 3.0, 2.0, 1).is_err());
    }

    #[test]
    fn essential_counts_for_every_death() {
        let d = PersistenceDiagram::new(vec![Interval::new(0, 0.0, f64::INFINITY)], 5.0).unwrap();
        assert_eq!(betti_rank(&d, 0.0, 1e300, 0).unwrap(), 1);
        assert_eq!(d.intervals()[0].truncated_death(5.0), 5.0);
    }

    #[test]
    fn csv_round_trip() {
        let d = PersistenceDiagram::new(
            vec![
                Interval::new(1, 1.0, 2f64.sqrt()),
                Interval::new(0, 0.0, f64::INFINITY),
                Interval::new(0, 0.0, 0.1 + 0.2),
            ],
            5.0,
        )
        .unwrap();
        let text = d.to_csv_string();
        assert!(text.contains(",inf"));
        assert_eq!(PersistenceDiagram::from_csv_str(&text, 5.0).unwrap(), d);
    }

    #[test]
    fn rejects_inverted_interval() {
        assert!(PersistenceDiagram::new(vec![Interval::new(0, 2.0, 1.0)], 5.0).is_err());
        assert!(PersistenceDiagram::from_csv_str("dim,birth,death\n0,x,1\n", 5.0).is_err());
    }
}
