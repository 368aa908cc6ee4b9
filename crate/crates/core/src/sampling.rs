//! Point clouds: seeded uniform samplers on spheres and tori, and CSV ingest.

use std::fmt::Write as _;
use std::path::Path;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result, RngStream};

/// A finite set of points in `dim`-dimensional Euclidean space.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    dim: usize,
    /// Free-form provenance tag, e.g. `sphere(r=2)`.
    pub label: String,
    /// Master seed of the stream that produced the cloud, if any.
    pub seed: Option<u64>,
}

impl PointCloud {
    /// Builds a cloud, checking that every point has dimension `dim` and
    /// finite coordinates.
    pub fn new(points: Vec<Vec<f64>>, dim: usize, label: impl Into<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("point dimension must be positive"));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::domain(format!(
                    "point {i} has dimension {} but the cloud has dimension {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::domain(format!(
                    "point {i} has a non-finite coordinate"
                )));
            }
        }
        Ok(Self {
            points,
            dim,
            label: label.into(),
            seed: None,
        })
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Z-scores every column in place (sample standard deviation). Constant
    /// columns are only centred.
    pub fn standardize(&mut self) {
        let n = self.points.len();
        if n < 2 {
            return;
        }
        for c in 0..self.dim {
            let mean = self.points.iter().map(|p| p[c]).sum::<f64>() / n as f64;
            let var = self
                .points
                .iter()
                .map(|p| (p[c] - mean).powi(2))
                .sum::<f64>()
                / (n - 1) as f64;
            let sd = var.sqrt();
            for p in &mut self.points {
                p[c] -= mean;
                if sd > 0.0 {
                    p[c] /= sd;
                }
            }
        }
    }

    /// CSV export: one point per row, coordinates only, no header.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }
}

/// `n` points uniform on the sphere of the given radius centred at the origin.
///
/// Each point is a normalised triple of independent standard normals, which
/// is exactly uniform on the sphere.
pub fn sample_sphere(n: usize, radius: f64, stream: RngStream) -> Result<PointCloud> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::domain(format!(
            "sphere radius must be positive, got {radius}"
        )));
    }
    let mut rng = stream.rng();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm < 1e-12 {
            continue;
        }
        let s = radius / norm;
        points.push(vec![v[0] * s, v[1] * s, v[2] * s]);
    }
    Ok(PointCloud {
        points,
        dim: 3,
        label: format!("sphere(radius={radius})"),
        seed: None,
    }
    .with_seed(stream.master_seed))
}

/// `n` points uniform (with respect to surface area) on the torus with major
/// radius `major` and tube radius `minor`.
///
/// The tube angle θ has density proportional to `1 + (minor/major)·cos θ`;
/// it is drawn by rejection against the uniform envelope. The azimuth is
/// uniform.
pub fn sample_torus(n: usize, major: f64, minor: f64, stream: RngStream) -> Result<PointCloud> {
    if !(minor > 0.0 && minor.is_finite() && major.is_finite()) {
        return Err(Error::domain(format!(
            "torus radii must be positive, got R={major}, r={minor}"
        )));
    }
    if minor >= major {
        return Err(Error::domain(format!(
            "tube radius r={minor} must be smaller than major radius R={major}"
        )));
    }
    let ratio = minor / major;
    let mut rng = stream.rng();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let theta = std::f64::consts::TAU * rng.random::<f64>();
        let accept = rng.random::<f64>() * (1.0 + ratio);
        if accept >= 1.0 + ratio * theta.cos() {
            continue;
        }
        let phi = std::f64::consts::TAU * rng.random::<f64>();
        let ring = major + minor * theta.cos();
        points.push(vec![
            ring * phi.cos(),
            ring * phi.sin(),
            minor * theta.sin(),
        ]);
    }
    Ok(PointCloud {
        points,
        dim: 3,
        label: format!("torus(R={major},r={minor})"),
        seed: None,
    }
    .with_seed(stream.master_seed))
}

/// Which CSV columns become coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ColumnSelector {
    /// Every column.
    #[default]
    All,
    /// Exactly these zero-based columns, in this order.
    Only(Vec<usize>),
    /// Every column except these zero-based ones.
    Skip(Vec<usize>),
}

impl ColumnSelector {
    /// The WDBC layout: column 0 is the sample id, column 1 the diagnosis
    /// letter, the remaining 30 columns are features.
    pub fn wdbc() -> Self {
        ColumnSelector::Skip(vec![0, 1])
    }

    fn resolve(&self, width: usize) -> Result<Vec<usize>> {
        let cols: Vec<usize> = match self {
            ColumnSelector::All => (0..width).collect(),
            ColumnSelector::Only(cols) => cols.clone(),
            ColumnSelector::Skip(skip) => (0..width).filter(|c| !skip.contains(c)).collect(),
        };
        if let Some(&bad) = cols.iter().find(|&&c| c >= width) {
            return Err(Error::Format(format!(
                "column {bad} out of range (file has {width} columns)"
            )));
        }
        if cols.is_empty() {
            return Err(Error::Format("column selection is empty".into()));
        }
        Ok(cols)
    }
}

impl std::str::FromStr for ColumnSelector {
    type Err = Error;

    /// Accepts `all`, `wdbc`, a comma list like `2,3,7`, or `skip:0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_list = |list: &str| -> Result<Vec<usize>> {
            list.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Format(format!("bad column index {c:?}")))
                })
                .collect()
        };
        match s {
            "all" => Ok(ColumnSelector::All),
            "wdbc" => Ok(ColumnSelector::wdbc()),
            _ => match s.strip_prefix("skip:") {
                Some(rest) => Ok(ColumnSelector::Skip(parse_list(rest)?)),
                None => Ok(ColumnSelector::Only(parse_list(s)?)),
            },
        }
    }
}

/// How many rows to keep from a CSV file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Subsample {
    #[default]
    All,
    Count(usize),
}

/// Reads a comma-separated file into a cloud.
///
/// A header row is detected when any cell of the first row fails to parse as
/// a number. Rows become points in file order; with [`Subsample::Count`]
/// smaller than the row count, a uniform subset without replacement is kept
/// (still in file order).
pub fn load_csv(
    path: &Path,
    columns: &ColumnSelector,
    subsample: Subsample,
    stream: RngStream,
) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        records.push(rec);
    }
    let header = records
        .first()
        .map(|r| r.iter().any(|c| c.parse::<f64>().is_err()))
        .unwrap_or(false);
    let first_data = usize::from(header);
    let data = &records[first_data.min(records.len())..];
    if data.is_empty() {
        return Err(Error::Format(format!(
            "{} contains no data rows",
            path.display()
        )));
    }
    let width = data[0].len();
    let cols = columns.resolve(width)?;

    let keep: Vec<usize> = match subsample {
        Subsample::All => (0..data.len()).collect(),
        Subsample::Count(k) if k > data.len() => {
            return Err(Error::SubsampleTooLarge {
                requested: k,
                available: data.len(),
            })
        }
        Subsample::Count(k) => {
            let mut rng = stream.rng();
            let mut idx = rand::seq::index::sample(&mut rng, data.len(), k).into_vec();
            idx.sort_unstable();
            idx
        }
    };

    let mut points = Vec::with_capacity(keep.len());
    for &r in &keep {
        let rec = &data[r];
        // 1-based row numbers as a user sees them in the file.
        let row = r + first_data + 1;
        let mut p = Vec::with_capacity(cols.len());
        for &c in &cols {
            let cell = rec.get(c).ok_or_else(|| Error::UnparsableCell {
                row,
                column: c,
                value: String::new(),
            })?;
            match cell.parse::<f64>() {
                Ok(x) if x.is_finite() => p.push(x),
                _ => {
                    return Err(Error::UnparsableCell {
                        row,
                        column: c,
                        value: cell.to_string(),
                    })
                }
            }
        }
        points.push(p);
    }
    let label = format!("csv({})", path.display());
    let mut cloud = PointCloud::new(points, cols.len(), label)?;
    if matches!(subsample, Subsample::Count(_)) {
        cloud.seed = Some(stream.master_seed);
    }
    Ok(cloud)
}
