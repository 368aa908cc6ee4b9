use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, ObjectKind};
use crate::bootstrap::{
    bootstrap_replicates, ci_boot_normal, ci_boot_percentile, ci_boot_pivotal, ci_boot_studentized,
    BootstrapRun, ReplicateMode,
};
use crate::density::{
    kde, kde_interval, risk_report, uniform_grid, DensityEstimate, Kernel, RiskReport,
};
use crate::inference::{delta_ci, normal_theory_ci, ConfidenceInterval, InfluenceMode, Statistic};
use crate::landscape::{sample_from_diagrams, Sample, SampleMeta};
use crate::rips::{build_rips, compute_persistence, distance_matrix, PersistenceDiagram};
use crate::sampling::{load_csv, sample_sphere, sample_torus, PointCloud, Subsample};
use crate::{Error, Result, RngStream};

/// Substream of the master seed reserved for point clouds.
pub const CLOUD_SUBSTREAM: u64 = 0;
/// Substream of the master seed reserved for the bootstrap.
pub const BOOTSTRAP_SUBSTREAM: u64 = 1;

/// Stream of the `index`-th cloud.
pub fn cloud_stream(master_seed: u64, index: u64) -> RngStream {
    RngStream::new(master_seed, CLOUD_SUBSTREAM).child(index)
}

pub fn bootstrap_stream(master_seed: u64) -> RngStream {
    RngStream::new(master_seed, BOOTSTRAP_SUBSTREAM)
}

/// The `index`-th point cloud of an experiment.
pub fn generate_cloud(cfg: &ExperimentConfig, index: u64) -> Result<PointCloud> {
    let stream = cloud_stream(cfg.master_seed, index);
    match cfg.object {
        ObjectKind::Sphere => sample_sphere(cfg.n_points, cfg.radius, stream),
        ObjectKind::Torus => sample_torus(cfg.n_points, cfg.major_radius, cfg.minor_radius, stream),
        ObjectKind::Csv => {
            let path = cfg
                .csv_path
                .as_ref()
                .ok_or_else(|| Error::Format("object = \"csv\" needs csv_path".into()))?;
            let mut cloud = load_csv(
                path,
                &cfg.columns()?,
                Subsample::Count(cfg.n_points),
                stream,
            )?;
            if cfg.standardize {
                cloud.standardize();
            }
            Ok(cloud)
        }
    }
}

pub fn diagram_for(cfg: &ExperimentConfig, cloud: &PointCloud) -> Result<PersistenceDiagram> {
    let dm = distance_matrix(cloud)?;
    let fc = build_rips(&dm, cfg.max_scale, cfg.max_dim, cfg.simplex_cap)?;
    Ok(compute_persistence(&fc))
}

/// Diagrams of clouds `0..n_diagrams`, in index order.
pub fn generate_diagrams(cfg: &ExperimentConfig) -> Result<Vec<PersistenceDiagram>> {
    (0..cfg.n_diagrams as u64)
        .into_par_iter()
        .map(|i| {
            let at = |stage, e| Error::in_stage(stage, Error::at_index(i as usize, e));
            let cloud = generate_cloud(cfg, i).map_err(|e| at("sampling", e))?;
            diagram_for(cfg, &cloud).map_err(|e| at("persistence", e))
        })
        .collect()
}

/// The landscape sample of a set of diagrams, with cloud seeds recorded.
pub fn landscape_sample(cfg: &ExperimentConfig, diagrams: &[PersistenceDiagram]) -> Result<Sample> {
    let sample = sample_from_diagrams(diagrams, &cfg.functional())?;
    let seeds = (0..diagrams.len() as u64)
        .map(|i| cloud_stream(cfg.master_seed, i).master_seed)
        .collect();
    let functional = sample.meta.functional.clone();
    Ok(sample.with_meta(SampleMeta { functional, seeds }))
}

/// Settings of the interval stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InferenceSettings {
    pub alpha: f64,
    pub bootstrap_b: usize,
    pub mode: ReplicateMode,
    pub inner_b: usize,
    pub statistic: Statistic,
    pub influence: InfluenceMode,
    pub master_seed: u64,
}

impl From<&ExperimentConfig> for InferenceSettings {
    fn from(cfg: &ExperimentConfig) -> Self {
        Self {
            alpha: cfg.alpha,
            bootstrap_b: cfg.bootstrap_b,
            mode: cfg.bootstrap_mode,
            inner_b: cfg.inner_b,
            statistic: cfg.statistic,
            influence: cfg.influence,
            master_seed: cfg.master_seed,
        }
    }
}

/// The six intervals of one sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    pub settings: InferenceSettings,
    pub n: usize,
    /// Plug-in value `T(F̂_n)`.
    pub estimate: f64,
    /// Normal-theory, delta, bootstrap normal, pivotal, studentized,
    /// percentile.
    pub intervals: Vec<ConfidenceInterval>,
    pub studentized_dropped: usize,
}

impl IntervalSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("intervals serialise")
    }
}

/// Computes all six intervals. Stages are labelled in errors; the
/// normal-theory interval goes first so small samples fail there.
pub fn infer(sample: &Sample, settings: InferenceSettings) -> Result<(IntervalSet, BootstrapRun)> {
    let nt = normal_theory_ci(sample, settings.alpha)
        .map_err(|e| Error::in_stage("normal_theory", e))?;
    let delta = delta_ci(
        sample,
        settings.alpha,
        settings.statistic,
        settings.influence,
    )
    .map_err(|e| Error::in_stage("delta", e))?;
    let boot = |e| Error::in_stage("bootstrap", e);
    let run = bootstrap_replicates(
        sample,
        settings.bootstrap_b,
        settings.mode,
        settings.statistic,
        bootstrap_stream(settings.master_seed),
    )
    .map_err(boot)?;
    let normal = ci_boot_normal(sample, &run, settings.alpha).map_err(boot)?;
    let pivotal = ci_boot_pivotal(sample, &run, settings.alpha).map_err(boot)?;
    let stud = ci_boot_studentized(sample, &run, settings.alpha, settings.inner_b).map_err(boot)?;
    let percentile = ci_boot_percentile(&run, settings.alpha).map_err(boot)?;
    let set = IntervalSet {
        settings,
        n: sample.len(),
        estimate: delta.statistic,
        intervals: vec![nt, delta, normal, pivotal, stud.interval, percentile],
        studentized_dropped: stud.dropped,
    };
    Ok((set, run))
}

/// Settings of the density stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensitySettings {
    pub kernel: Kernel,
    pub h_min: f64,
    pub h_max: f64,
    pub h_step: f64,
    pub alpha: f64,
}

impl From<&ExperimentConfig> for DensitySettings {
    fn from(cfg: &ExperimentConfig) -> Self {
        Self {
            kernel: cfg.kernel,
            h_min: cfg.h_min,
            h_max: cfg.h_max,
            h_step: cfg.h_step,
            alpha: cfg.alpha,
        }
    }
}

/// Number of nodes of the tabulated density.
pub const DENSITY_GRID_POINTS: usize = 2001;

/// Bandwidth selection, risk summary, the density at the CV bandwidth and
/// its quantile interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub settings: DensitySettings,
    pub risk: RiskReport,
    pub estimate: DensityEstimate,
    pub interval: ConfidenceInterval,
}

pub fn density_stage(values: &[f64], settings: DensitySettings) -> Result<DensityReport> {
    let stage = |e| Error::in_stage("density", e);
    let risk = risk_report(
        values,
        settings.kernel,
        settings.h_min,
        settings.h_max,
        settings.h_step,
    )
    .map_err(stage)?;
    let h = risk.h_cv;
    let pad = settings.kernel.reach().min(6.0) * h;
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min) - pad;
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + pad;
    let estimate = kde(
        values,
        h,
        settings.kernel,
        &uniform_grid(lo, hi, DENSITY_GRID_POINTS),
    )
    .map_err(stage)?;
    let interval = kde_interval(&estimate, settings.alpha).map_err(stage)?;
    Ok(DensityReport {
        settings,
        risk,
        estimate,
        interval,
    })
}
