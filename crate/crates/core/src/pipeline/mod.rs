//! End-to-end experiment: clouds → diagrams → landscape sample → intervals
//! → density and risk, with every artifact written to one directory.
//!
//! Layout of the output directory:
//!
//! ```text
//! config.toml            resolved configuration
//! diagrams/diagram_NNN.csv
//! sample.csv             landscape functionals Y_i
//! replicates.csv         bootstrap replicates T*_b
//! intervals.json         the six intervals
//! summary_table.csv      method, lower, upper, width (six + KDE)
//! risk.json              bandwidth sweep and risk summary
//! cv_curve.csv
//! density.csv            KDE of the replicates at the CV bandwidth
//! kde_interval.json
//! cv_curve.svg, density.svg, intervals.svg
//! manifest.json          sha256 and size of every file above
//! ```
//!
//! The density stage runs on the bootstrap replicates. Files are written to
//! a staging directory that replaces `output_dir` only on success.

mod config;
mod stages;
pub mod svg;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use config::{ExperimentConfig, ObjectKind, OUTPUT_DIR_ENV};
pub use stages::{
    bootstrap_stream, cloud_stream, density_stage, diagram_for, generate_cloud, generate_diagrams,
    infer, landscape_sample, DensityReport, DensitySettings, InferenceSettings, IntervalSet,
    BOOTSTRAP_SUBSTREAM, CLOUD_SUBSTREAM, DENSITY_GRID_POINTS,
};

use crate::inference::ConfidenceInterval;
use crate::landscape::Sample;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    pub functional: String,
}

impl SampleStats {
    pub fn of(sample: &Sample) -> Self {
        let y = sample.values();
        let n = y.len();
        let mean = y.iter().sum::<f64>() / n as f64;
        let sd = if n > 1 {
            (y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self {
            n,
            mean,
            sd,
            min: y.iter().cloned().fold(f64::INFINITY, f64::min),
            max: y.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            functional: sample.meta.functional.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Path relative to the output directory, `/`-separated.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// What a pipeline run produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub output_dir: PathBuf,
    pub stats: SampleStats,
    pub intervals: IntervalSet,
    pub density: DensityReport,
    pub manifest: Vec<ManifestEntry>,
}

impl ReportBundle {
    pub fn interval(&self, method: crate::inference::CiMethod) -> Option<&ConfidenceInterval> {
        self.intervals
            .intervals
            .iter()
            .find(|ci| ci.method == method)
    }

    pub fn kde_interval(&self) -> &ConfidenceInterval {
        &self.density.interval
    }
}

/// Rows `method,lower,upper,width`.
pub fn summary_table(intervals: &IntervalSet, kde: Option<&ConfidenceInterval>) -> String {
    let mut out = String::from("method,lower,upper,width\n");
    for ci in intervals.intervals.iter().chain(kde) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            ci.method.name(),
            ci.lower,
            ci.upper,
            ci.width()
        );
    }
    out
}

/// JSON of the KDE interval together with the bandwidth it used.
pub fn kde_interval_json(report: &DensityReport) -> String {
    #[derive(Serialize)]
    struct View<'a> {
        bandwidth: f64,
        kernel: crate::density::Kernel,
        interval: &'a ConfidenceInterval,
    }
    serde_json::to_string_pretty(&View {
        bandwidth: report.risk.h_cv,
        kernel: report.settings.kernel,
        interval: &report.interval,
    })
    .expect("interval serialises")
}

pub fn diagram_file_name(index: usize) -> String {
    format!("diagram_{index:03}.csv")
}

/// Everything the density stage writes, keyed by file name.
pub fn density_files(report: &DensityReport) -> Vec<(String, String)> {
    let curve: Vec<(f64, f64)> = report
        .risk
        .h_grid
        .iter()
        .cloned()
        .zip(report.risk.j_scores.iter().cloned())
        .collect();
    let dens: Vec<(f64, f64)> = report
        .estimate
        .grid
        .iter()
        .cloned()
        .zip(report.estimate.values.iter().cloned())
        .collect();
    vec![
        ("risk.json".into(), report.risk.to_json()),
        ("cv_curve.csv".into(), report.risk.cv_curve_csv()),
        ("density.csv".into(), report.estimate.to_csv_string()),
        ("kde_interval.json".into(), kde_interval_json(report)),
        (
            "cv_curve.svg".into(),
            svg::line_plot("cross-validation score", "h", "J(h)", &curve),
        ),
        (
            "density.svg".into(),
            svg::line_plot("kernel density of replicates", "x", "density", &dens),
        ),
    ]
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, text).map_err(|e| Error::io(path, e))
}

/// sha256 of every file under `dir`, sorted by relative path.
pub fn build_manifest(dir: &Path) -> Result<Vec<ManifestEntry>> {
    fn walk(root: &Path, dir: &Path, out: &mut Vec<ManifestEntry>) -> Result<()> {
        for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
            let path = entry.map_err(|e| Error::io(dir, e))?.path();
            if path.is_dir() {
                walk(root, &path, out)?;
                continue;
            }
            let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
            let rel = path.strip_prefix(root).expect("walk stays under root");
            out.push(ManifestEntry {
                path: rel
                    .components()
                    .map(|c| c.as_os_str().to_string_lossy())
                    .collect::<Vec<_>>()
                    .join("/"),
                sha256: hex::encode(Sha256::digest(&bytes)),
                bytes: bytes.len() as u64,
            });
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, dir, &mut out)?;
    out.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(out)
}

fn staging_dir(target: &Path) -> PathBuf {
    let name = target
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    target.with_file_name(format!(".{name}.staging-{}", std::process::id()))
}

/// Runs the whole experiment and writes its artifacts to `cfg.output_dir`.
pub fn run_pipeline(cfg: &ExperimentConfig) -> Result<ReportBundle> {
    cfg.validate().map_err(|e| Error::in_stage("config", e))?;
    let target = cfg.output_dir.clone();
    if let Some(parent) = target.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let staging = staging_dir(&target);
    let _ = std::fs::remove_dir_all(&staging);
    std::fs::create_dir_all(staging.join("diagrams")).map_err(|e| Error::io(&staging, e))?;

    match run_into(cfg, &staging) {
        Ok((stats, intervals, density)) => {
            let finish = || -> Result<Vec<ManifestEntry>> {
                let manifest = build_manifest(&staging)?;
                write(
                    &staging,
                    "manifest.json",
                    &serde_json::to_string_pretty(&manifest).expect("manifest"),
                )?;
                if target.exists() {
                    std::fs::remove_dir_all(&target).map_err(|e| Error::io(&target, e))?;
                }
                std::fs::rename(&staging, &target).map_err(|e| Error::io(&target, e))?;
                Ok(manifest)
            };
            match finish() {
                Ok(manifest) => Ok(ReportBundle {
                    output_dir: target,
                    stats,
                    intervals,
                    density,
                    manifest,
                }),
                Err(e) => {
                    let _ = std::fs::remove_dir_all(&staging);
                    Err(Error::in_stage("output", e))
                }
            }
        }
        Err(e) => {
            let _ = std::fs::remove_dir_all(&staging);
            Err(e)
        }
    }
}

fn run_into(
    cfg: &ExperimentConfig,
    dir: &Path,
) -> Result<(SampleStats, IntervalSet, DensityReport)> {
    let out = |e| Error::in_stage("output", e);
    write(dir, "config.toml", &cfg.to_toml_string()).map_err(out)?;

    let diagrams = generate_diagrams(cfg)?;
    for (i, d) in diagrams.iter().enumerate() {
        d.write_csv(&dir.join("diagrams").join(diagram_file_name(i)))
            .map_err(out)?;
    }
    let sample = landscape_sample(cfg, &diagrams).map_err(|e| Error::in_stage("landscape", e))?;
    sample.write_csv(&dir.join("sample.csv")).map_err(out)?;
    let stats = SampleStats::of(&sample);

    let (intervals, run) = infer(&sample, cfg.into())?;
    write(dir, "replicates.csv", &run.to_csv_string()).map_err(out)?;
    write(dir, "intervals.json", &intervals.to_json()).map_err(out)?;

    let density = density_stage(run.replicates(), cfg.into())?;
    for (name, text) in density_files(&density) {
        write(dir, &name, &text).map_err(out)?;
    }
    write(
        dir,
        "summary_table.csv",
        &summary_table(&intervals, Some(&density.interval)),
    )
    .map_err(out)?;
    let rows: Vec<(String, f64, f64)> = intervals
        .intervals
        .iter()
        .chain(Some(&density.interval))
        .map(|ci| (ci.method.name().to_string(), ci.lower, ci.upper))
        .collect();
    write(
        dir,
        "intervals.svg",
        &svg::interval_plot("confidence intervals", &rows),
    )
    .map_err(out)?;
    Ok((stats, intervals, density))
}
