//! Persistence landscapes and the scalar samples derived from them.
//!
//! A bar `(b, d)` contributes the tent `t ↦ max(0, min(t − b, d − t))`, and
//! level `k` of the landscape is the pointwise k-th largest tent. Levels are
//! stored exactly as sorted critical points: between two consecutive
//! candidates (bar endpoints and every crossing `(b_i + d_j)/2`) all tents
//! are linear and their order is fixed, so each level is linear there too.

use std::fmt::Write as _;
use std::path::Path;

use crate::rips::PersistenceDiagram;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceLandscape {
    levels: Vec<Vec<(f64, f64)>>,
    support: (f64, f64),
    homology_dim: u8,
}

impl PersistenceLandscape {
    /// Critical points `(t, λ_k(t))` of level `k` (1-based).
    pub fn level(&self, k: usize) -> Option<&[(f64, f64)]> {
        k.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .map(Vec::as_slice)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn homology_dim(&self) -> u8 {
        self.homology_dim
    }

    /// λ_k(t): linear interpolation between critical points, 0 outside the
    /// support or for levels that were not stored.
    pub fn evaluate(&self, k: usize, t: f64) -> f64 {
        let Some(pts) = self.level(k) else { return 0.0 };
        interpolate(pts, t)
    }

    /// CSV rows `k,t,value` of all critical points.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("k,t,value\n");
        for (i, lvl) in self.levels.iter().enumerate() {
            for &(t, v) in lvl {
                let _ = writeln!(out, "{},{t},{v}", i + 1);
            }
        }
        out
    }
}

fn interpolate(pts: &[(f64, f64)], t: f64) -> f64 {
    let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
        return 0.0;
    };
    if !(t >= first.0 && t <= last.0) {
        return 0.0;
    }
    let i = pts.partition_point(|p| p.0 <= t);
    if i == 0 {
        return first.1;
    }
    let (t0, v0) = pts[i - 1];
    if t0 == t || i == pts.len() {
        return v0;
    }
    let (t1, v1) = pts[i];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

fn tent(t: f64, b: f64, d: f64) -> f64 {
    (t - b).min(d - t).max(0.0)
}

/// Landscape of the `dim`-dimensional bars of `diag`, restricted to
/// `support`, keeping levels `1..=k_max`. Essential bars are truncated at
/// the diagram's `max_scale`.
pub fn landscape_from_diagram(
    diag: &PersistenceDiagram,
    dim: u8,
    k_max: usize,
    support: (f64, f64),
) -> Result<PersistenceLandscape> {
    let (lo, hi) = support;
    if k_max == 0 {
        return Err(Error::domain("landscape needs at least one level"));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::domain(format!(
            "landscape support [{lo}, {hi}] must be a bounded interval"
        )));
    }
    let bars: Vec<(f64, f64)> = diag
        .in_dim(dim)
        .map(|iv| (iv.birth, iv.truncated_death(diag.max_scale)))
        .filter(|(b, d)| d > b)
        .collect();

    let mut ts = vec![lo, hi];
    for &(b, d) in &bars {
        ts.push(b);
        ts.push(d);
        for &(_, d2) in &bars {
            if b < d2 {
                ts.push(0.5 * (b + d2));
            }
        }
    }
    ts.retain(|t| *t >= lo && *t <= hi);
    ts.sort_by(f64::total_cmp);
    ts.dedup();

    let mut levels: Vec<Vec<(f64, f64)>> = vec![Vec::with_capacity(ts.len()); k_max];
    let mut values = Vec::with_capacity(bars.len());
    for &t in &ts {
        values.clear();
        values.extend(
            bars.iter()
                .map(|&(b, d)| tent(t, b, d))
                .filter(|v| *v > 0.0),
        );
        values.sort_by(|a, b| b.total_cmp(a));
        for (k, level) in levels.iter_mut().enumerate() {
            level.push((t, values.get(k).copied().unwrap_or(0.0)));
        }
    }
    for level in &mut levels {
        drop_collinear(level);
    }
    Ok(PersistenceLandscape {
        levels,
        support,
        homology_dim: dim,
    })
}

/// Removes interior points lying on the segment through their neighbours.
fn drop_collinear(points: &mut Vec<(f64, f64)>) {
    if points.len() < 3 {
        return;
    }
    let mut kept: Vec<(f64, f64)> = Vec::with_capacity(points.len());
    kept.push(points[0]);
    for i in 1..points.len() - 1 {
        let (t0, v0) = *kept.last().unwrap();
        let (t1, v1) = points[i];
        let (t2, v2) = points[i + 1];
        let cross = (v1 - v0) * (t2 - t1) - (v2 - v1) * (t1 - t0);
        let scale = (t2 - t0) * (v0.abs() + v1.abs() + v2.abs() + (t2 - t0));
        if cross.abs() > 1e-14 * scale {
            kept.push(points[i]);
        }
    }
    kept.push(*points.last().unwrap());
    *points = kept;
}

/// `Σ_{k ≤ K} ∫_{−B}^{B} λ_k(t) dt`, integrating over the part of `[−B, B]`
/// inside the landscape's support. Exact for piecewise-linear levels.
pub fn landscape_functional(ls: &PersistenceLandscape, bound: f64, k: usize) -> Result<f64> {
    if !(bound > 0.0) {
        return Err(Error::domain(format!(
            "functional bound must be positive, got {bound}"
        )));
    }
    if k == 0 {
        return Err(Error::domain("functional needs K >= 1"));
    }
    let lo = (-bound).max(ls.support.0);
    let hi = bound.min(ls.support.1);
    if lo >= hi {
        return Ok(0.0);
    }
    Ok(ls
        .levels
        .iter()
        .take(k)
        .map(|lvl| integrate(lvl, lo, hi))
        .sum())
}

fn integrate(pts: &[(f64, f64)], lo: f64, hi: f64) -> f64 {
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0].0.max(lo), w[1].0.min(hi));
        if a >= b {
            continue;
        }
        let (fa, fb) = (interpolate(pts, a), interpolate(pts, b));
        total += 0.5 * (fa + fb) * (b - a);
    }
    total
}

/// Provenance of a [`Sample`].
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SampleMeta {
    /// Human-readable description of the functional that produced the values.
    pub functional: String,
    /// Master seeds of the clouds behind each value, when known.
    pub seeds: Vec<u64>,
}

/// Ordered real-valued observations `Y_1, …, Y_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    pub meta: SampleMeta,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain(format!("sample value {i} is not finite")));
        }
        Ok(Self {
            values,
            meta: SampleMeta::default(),
        })
    }

    pub fn with_meta(mut self, meta: SampleMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Single-column CSV with header `y`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("y\n");
        for v in &self.values {
            let _ = writeln!(out, "{v}");
        }
        out
    }

    /// Reads the first column of a CSV; a non-numeric first row is a header.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let cell = line.split(',').next().unwrap_or("").trim();
            if cell.is_empty() {
                continue;
            }
            match cell.parse::<f64>() {
                Ok(v) => values.push(v),
                Err(_) if i == 0 => {}
                Err(_) => {
                    return Err(Error::UnparsableCell {
                        row: i + 1,
                        column: 0,
                        value: cell.to_string(),
                    })
                }
            }
        }
        Self::new(values)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text)
    }
}

/// Settings of the landscape functional applied to each diagram.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FunctionalSpec {
    pub dim: u8,
    /// Number of levels summed (K).
    pub levels: usize,
    /// Half-width B of the integration window `[−B, B]`.
    pub bound: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Default for FunctionalSpec {
    fn default() -> Self {
        Self {
            dim: 1,
            levels: 1,
            bound: 5.0,
            t_min: 0.0,
            t_max: 5.0,
        }
    }
}

impl FunctionalSpec {
    pub fn describe(&self) -> String {
        format!(
            "sum_{{k<={}}} int_[-{b},{b}] lambda_k(t) dt, H{}, t in [{}, {}]",
            self.levels,
            self.dim,
            self.t_min,
            self.t_max,
            b = self.bound
        )
    }

    pub fn apply(&self, diag: &PersistenceDiagram) -> Result<f64> {
        let ls = landscape_from_diagram(diag, self.dim, self.levels, (self.t_min, self.t_max))?;
        landscape_functional(&ls, self.bound, self.levels)
    }
}

/// `Y_i = functional(landscape(diagrams[i]))`, in order.
pub fn sample_from_diagrams(
    diagrams: &[PersistenceDiagram],
    spec: &FunctionalSpec,
) -> Result<Sample> {
    if diagrams.is_empty() {
        return Err(Error::domain("no diagrams to build a sample from"));
    }
    let values = diagrams
        .iter()
        .enumerate()
        .map(|(i, d)| spec.apply(d).map_err(|e| Error::at_index(i, e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Sample::new(values)?.with_meta(SampleMeta {
        functional: spec.describe(),
        seeds: Vec::new(),
    }))
}
