//! Python module `plstat`: clouds, diagrams, landscapes, intervals and
//! density estimates backed by the Rust core.

use std::path::PathBuf;

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use plstat_core::bootstrap::ReplicateMode;
use plstat_core::density::{self as dens, Kernel, RiskMode};
use plstat_core::inference::{InfluenceMode, Statistic};
use plstat_core::landscape::{self as land, FunctionalSpec};
use plstat_core::pipeline::{self, ExperimentConfig, InferenceSettings};
use plstat_core::rips::{self, ReductionMode};
use plstat_core::sampling::{self, PointCloud};
use plstat_core::{Error, RngStream};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::MissingFile(_) | Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(py_err)
}

fn cloud_from(points: Vec<Vec<f64>>) -> PyResult<PointCloud> {
    let dim = points.first().map_or(0, Vec::len);
    PointCloud::new(points, dim, "python").map_err(py_err)
}

/// `n` points uniform on a sphere of the given radius.
#[pyfunction]
#[pyo3(signature = (n, radius=2.0, seed=0, substream=0))]
fn sample_sphere(n: usize, radius: f64, seed: u64, substream: u64) -> PyResult<Vec<Vec<f64>>> {
    let c = sampling::sample_sphere(n, radius, RngStream::new(seed, substream)).map_err(py_err)?;
    Ok(c.points().to_vec())
}

/// `n` points uniform (by area) on a torus.
#[pyfunction]
#[pyo3(signature = (n, major_radius=2.0, minor_radius=1.0, seed=0, substream=0))]
fn sample_torus(
    n: usize,
    major_radius: f64,
    minor_radius: f64,
    seed: u64,
    substream: u64,
) -> PyResult<Vec<Vec<f64>>> {
    let c = sampling::sample_torus(
        n,
        major_radius,
        minor_radius,
        RngStream::new(seed, substream),
    )
    .map_err(py_err)?;
    Ok(c.points().to_vec())
}

/// A persistence diagram. Essential bars have `death == inf`.
#[pyclass(name = "Diagram", module = "plstat", frozen)]
struct PyDiagram {
    inner: rips::PersistenceDiagram,
}

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    #[pyo3(signature = (points, max_scale, max_dim=1, simplex_cap=rips::DEFAULT_SIMPLEX_CAP, reduction="cohomology"))]
    fn from_points(
        points: Vec<Vec<f64>>,
        max_scale: f64,
        max_dim: usize,
        simplex_cap: usize,
        reduction: &str,
    ) -> PyResult<Self> {
        let cloud = cloud_from(points)?;
        let mode: ReductionMode = parse(reduction)?;
        let dm = rips::distance_matrix(&cloud).map_err(py_err)?;
        let fc = rips::build_rips(&dm, max_scale, max_dim, simplex_cap).map_err(py_err)?;
        Ok(Self {
            inner: rips::compute_persistence_with(&fc, mode),
        })
    }

    #[staticmethod]
    fn from_csv(text: &str, max_scale: f64) -> PyResult<Self> {
        Ok(Self {
            inner: rips::PersistenceDiagram::from_csv_str(text, max_scale).map_err(py_err)?,
        })
    }

    /// `(dim, birth, death)` triples in canonical order.
    fn intervals(&self) -> Vec<(u8, f64, f64)> {
        self.inner
            .intervals()
            .iter()
            .map(|iv| (iv.dim, iv.birth, iv.death))
            .collect()
    }

    #[getter]
    fn max_scale(&self) -> f64 {
        self.inner.max_scale
    }

    fn betti(&self, birth: f64, death: f64, dim: u8) -> PyResult<usize> {
        rips::betti_rank(&self.inner, birth, death, dim).map_err(py_err)
    }

    #[pyo3(signature = (dim=1, levels=1, t_min=0.0, t_max=5.0))]
    fn landscape(&self, dim: u8, levels: usize, t_min: f64, t_max: f64) -> PyResult<PyLandscape> {
        let inner = land::landscape_from_diagram(&self.inner, dim, levels, (t_min, t_max))
            .map_err(py_err)?;
        Ok(PyLandscape { inner })
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv_string()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram({} intervals, max_scale={})",
            self.inner.len(),
            self.inner.max_scale
        )
    }
}

/// Exact piecewise-linear persistence landscape.
#[pyclass(name = "Landscape", module = "plstat", frozen)]
struct PyLandscape {
    inner: land::PersistenceLandscape,
}

#[pymethods]
impl PyLandscape {
    /// λ_k(t) with levels numbered from 1.
    fn evaluate(&self, k: usize, t: f64) -> f64 {
        self.inner.evaluate(k, t)
    }

    /// Critical points `(t, value)` of level `k`.
    fn level(&self, k: usize) -> Option<Vec<(f64, f64)>> {
        self.inner.level(k).map(<[_]>::to_vec)
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// Sum over the first `k` levels of the integral over `[-bound, bound]`.
    #[pyo3(signature = (bound=5.0, k=1))]
    fn functional(&self, bound: f64, k: usize) -> PyResult<f64> {
        land::landscape_functional(&self.inner, bound, k).map_err(py_err)
    }
}

/// One functional value per diagram.
#[pyfunction]
#[pyo3(signature = (diagrams, dim=1, levels=1, bound=5.0, t_min=0.0, t_max=5.0))]
fn landscape_sample(
    diagrams: Vec<PyRef<'_, PyDiagram>>,
    dim: u8,
    levels: usize,
    bound: f64,
    t_min: f64,
    t_max: f64,
) -> PyResult<Vec<f64>> {
    let spec = FunctionalSpec {
        dim,
        levels,
        bound,
        t_min,
        t_max,
    };
    let ds: Vec<_> = diagrams.iter().map(|d| d.inner.clone()).collect();
    Ok(land::sample_from_diagrams(&ds, &spec)
        .map_err(py_err)?
        .values()
        .to_vec())
}

/// All six intervals as a dict parsed from the JSON report.
#[pyfunction]
#[pyo3(signature = (values, alpha=0.05, bootstrap_b=500, seed=0, mode="interp_inverse", inner_b=25, statistic="log_sum", influence="literal"))]
#[allow(clippy::too_many_arguments)]
fn confidence_intervals(
    py: Python<'_>,
    values: Vec<f64>,
    alpha: f64,
    bootstrap_b: usize,
    seed: u64,
    mode: &str,
    inner_b: usize,
    statistic: &str,
    influence: &str,
) -> PyResult<Py<PyAny>> {
    let sample = land::Sample::new(values).map_err(py_err)?;
    let settings = InferenceSettings {
        alpha,
        bootstrap_b,
        mode: parse::<ReplicateMode>(mode)?,
        inner_b,
        statistic: parse::<Statistic>(statistic)?,
        influence: parse::<InfluenceMode>(influence)?,
        master_seed: seed,
    };
    let (set, run) = py
        .detach(|| pipeline::infer(&sample, settings))
        .map_err(py_err)?;
    let out = json_to_py(py, &set.to_json())?;
    out.bind(py)
        .set_item("replicates", run.replicates().to_vec())?;
    Ok(out)
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

/// Kernel density estimate on `grid`.
#[pyfunction]
#[pyo3(signature = (values, bandwidth, grid, kernel="gaussian"))]
fn kde(values: Vec<f64>, bandwidth: f64, grid: Vec<f64>, kernel: &str) -> PyResult<Vec<f64>> {
    let est = dens::kde(&values, bandwidth, parse::<Kernel>(kernel)?, &grid).map_err(py_err)?;
    Ok(est.values)
}

/// Leave-one-out cross-validation score J(h).
#[pyfunction]
#[pyo3(signature = (values, bandwidth, kernel="gaussian"))]
fn cv_score(values: Vec<f64>, bandwidth: f64, kernel: &str) -> PyResult<f64> {
    dens::cross_validation_score(&values, bandwidth, parse::<Kernel>(kernel)?).map_err(py_err)
}

/// `(h_cv, h_grid, scores)` over an arithmetic bandwidth grid.
#[pyfunction]
#[pyo3(signature = (values, kernel="gaussian", h_min=0.002, h_max=0.3, h_step=0.002))]
fn select_bandwidth(
    py: Python<'_>,
    values: Vec<f64>,
    kernel: &str,
    h_min: f64,
    h_max: f64,
    h_step: f64,
) -> PyResult<(f64, Vec<f64>, Vec<f64>)> {
    let kernel = parse::<Kernel>(kernel)?;
    let sel = py
        .detach(|| dens::select_bandwidth(&values, kernel, h_min, h_max, h_step))
        .map_err(py_err)?;
    Ok((sel.h_cv, sel.h_grid, sel.scores))
}

/// `(bias, variance, total)` of the leading-order integrated risk.
#[pyfunction]
#[pyo3(signature = (n, h, mode, int_fprime_sq=0.0, kernel=None, int_fsecond_sq=None))]
fn estimated_risk(
    n: usize,
    h: f64,
    mode: &str,
    int_fprime_sq: f64,
    kernel: Option<&str>,
    int_fsecond_sq: Option<f64>,
) -> PyResult<(f64, f64, f64)> {
    let mode = match mode {
        "histogram" => RiskMode::Histogram,
        "kernel" => RiskMode::Kernel,
        _ => return Err(PyValueError::new_err(format!("unknown risk mode {mode:?}"))),
    };
    let kernel = kernel.map(parse::<Kernel>).transpose()?;
    let t =
        dens::estimated_risk(n, h, int_fprime_sq, mode, kernel, int_fsecond_sq).map_err(py_err)?;
    Ok((t.bias, t.variance, t.total))
}

/// Runs a full experiment from TOML text; returns the output directory.
#[pyfunction]
#[pyo3(signature = (config_toml, output_dir=None))]
fn run_pipeline(
    py: Python<'_>,
    config_toml: &str,
    output_dir: Option<PathBuf>,
) -> PyResult<String> {
    let mut cfg = ExperimentConfig::from_toml_str(config_toml).map_err(py_err)?;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir;
    }
    let bundle = py.detach(|| pipeline::run_pipeline(&cfg)).map_err(py_err)?;
    Ok(bundle.output_dir.display().to_string())
}

#[pymodule]
fn plstat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_class::<PyLandscape>()?;
    m.add_function(wrap_pyfunction!(sample_sphere, m)?)?;
    m.add_function(wrap_pyfunction!(sample_torus, m)?)?;
    m.add_function(wrap_pyfunction!(landscape_sample, m)?)?;
    m.add_function(wrap_pyfunction!(confidence_intervals, m)?)?;
    m.add_function(wrap_pyfunction!(kde, m)?)?;
    m.add_function(wrap_pyfunction!(cv_score, m)?)?;
    m.add_function(wrap_pyfunction!(select_bandwidth, m)?)?;
    m.add_function(wrap_pyfunction!(estimated_risk, m)?)?;
    m.add_function(wrap_pyfunction!(run_pipeline, m)?)?;
    Ok(())
}
