use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bootstrap::ReplicateMode;
use crate::density::Kernel;
use crate::inference::{InfluenceMode, Statistic};
use crate::landscape::FunctionalSpec;
use crate::rips::DEFAULT_SIMPLEX_CAP;
use crate::sampling::ColumnSelector;
use crate::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "PLSTAT_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    #[default]
    Sphere,
    Torus,
    Csv,
}

impl std::str::FromStr for ObjectKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(Self::Sphere),
            "torus" => Ok(Self::Torus),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::Format(format!("unknown object {s:?}"))),
        }
    }
}

/// One experiment, read from a flat TOML file. Every key is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub object: ObjectKind,
    pub radius: f64,
    pub major_radius: f64,
    pub minor_radius: f64,
    pub csv_path: Option<PathBuf>,
    /// `all`, `wdbc`, `skip:0,1` or a list such as `2,3,4`.
    pub csv_columns: String,
    pub standardize: bool,

    pub n_points: usize,
    pub n_diagrams: usize,
    pub max_scale: f64,
    pub max_dim: usize,
    pub simplex_cap: usize,

    pub homology_dim: u8,
    pub t_min: f64,
    pub t_max: f64,
    pub k: usize,
    pub bound: f64,

    pub bootstrap_b: usize,
    pub bootstrap_mode: ReplicateMode,
    pub inner_b: usize,
    pub statistic: Statistic,
    pub influence: InfluenceMode,

    pub kernel: Kernel,
    pub h_min: f64,
    pub h_max: f64,
    pub h_step: f64,

    pub alpha: f64,
    pub master_seed: u64,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let output_dir = std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("plstat-out"));
        Self {
            object: ObjectKind::Sphere,
            radius: 2.0,
            major_radius: 2.0,
            minor_radius: 1.0,
            csv_path: None,
            csv_columns: "wdbc".into(),
            standardize: false,
            n_points: 200,
            n_diagrams: 100,
            max_scale: 5.0,
            max_dim: 1,
            simplex_cap: DEFAULT_SIMPLEX_CAP,
            homology_dim: 1,
            t_min: 0.0,
            t_max: 5.0,
            k: 1,
            bound: 5.0,
            bootstrap_b: 500,
            bootstrap_mode: ReplicateMode::InterpInverse,
            inner_b: crate::bootstrap::DEFAULT_INNER_B,
            statistic: Statistic::LogSum,
            influence: InfluenceMode::Literal,
            kernel: Kernel::Tricube,
            h_min: 0.002,
            h_max: 0.3,
            h_step: 0.002,
            alpha: 0.05,
            master_seed: 0,
            output_dir,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Format(format!("config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml_str(&text)?;
        // Relative data paths are taken relative to the config file.
        if let (Some(csv), Some(dir)) = (&cfg.csv_path, path.parent()) {
            if csv.is_relative() && !dir.as_os_str().is_empty() {
                cfg.csv_path = Some(dir.join(csv));
            }
        }
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn columns(&self) -> Result<ColumnSelector> {
        self.csv_columns.parse()
    }

    pub fn functional(&self) -> FunctionalSpec {
        FunctionalSpec {
            dim: self.homology_dim,
            levels: self.k,
            bound: self.bound,
            t_min: self.t_min,
            t_max: self.t_max,
        }
    }

    /// Checks ranges that would otherwise fail deep inside a stage.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("radius", self.radius),
            ("major_radius", self.major_radius),
            ("minor_radius", self.minor_radius),
            ("max_scale", self.max_scale),
            ("bound", self.bound),
            ("h_min", self.h_min),
            ("h_max", self.h_max),
            ("h_step", self.h_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        let counts = [
            ("n_points", self.n_points),
            ("n_diagrams", self.n_diagrams),
            ("bootstrap_b", self.bootstrap_b),
            ("k", self.k),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::domain(format!("{name} must be at least 1")));
            }
        }
        if self.max_dim > 1 {
            return Err(Error::domain(format!(
                "max_dim must be 0 or 1, got {}",
                self.max_dim
            )));
        }
        if self.homology_dim as usize > self.max_dim {
            return Err(Error::domain(format!(
                "homology_dim {} exceeds max_dim {}",
                self.homology_dim, self.max_dim
            )));
        }
        if !(self.t_max > self.t_min) {
            return Err(Error::domain(format!(
                "need t_min < t_max, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::domain(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.object == ObjectKind::Csv && self.csv_path.is_none() {
            return Err(Error::Format("object = \"csv\" needs csv_path".into()));
        }
        self.columns()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_mirror_experiments() {
        let c = ExperimentConfig::default();
        assert_eq!((c.t_min, c.t_max, c.k), (0.0, 5.0, 1));
        assert_eq!((c.max_scale, c.max_dim, c.n_diagrams), (5.0, 1, 100));
        assert_eq!((c.bootstrap_b, c.alpha, c.h_step), (500, 0.05, 0.002));
        c.validate().unwrap();
    }

    #[test]
    fn flat_toml() {
        let c = ExperimentConfig::from_toml_str(
            "object = \"torus\"\nmajor_radius = 3.0\nkernel = \"gaussian\"\nbootstrap_mode = \"resample\"\nmaster_seed = 9\n",
        )
        .unwrap();
        assert_eq!(c.object, ObjectKind::Torus);
        assert_eq!(c.major_radius, 3.0);
        assert_eq!(c.kernel, Kernel::Gaussian);
        assert_eq!(c.bootstrap_mode, ReplicateMode::Resample);
        assert_eq!(c.n_diagrams, 100);
        let back = ExperimentConfig::from_toml_str(&c.to_toml_string()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(ExperimentConfig::from_toml_str("colour = 3\n").is_err());
        assert!(ExperimentConfig::from_toml_str("kernel = \"box\"\n").is_err());
        let c = ExperimentConfig {
            object: ObjectKind::Csv,
            ..Default::default()
        };
        assert!(c.validate().is_err());
        let c = ExperimentConfig {
            alpha: 1.0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
