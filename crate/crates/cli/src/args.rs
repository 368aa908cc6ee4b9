use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plstat_core::bootstrap::ReplicateMode;
use plstat_core::density::{Kernel, RiskMode};
use plstat_core::inference::{InfluenceMode, Statistic};
use plstat_core::pipeline::{ExperimentConfig, ObjectKind, OUTPUT_DIR_ENV};
use plstat_core::rips::ReductionMode;

#[derive(Parser, Debug)]
#[command(
    name = "plstat",
    version,
    about = "Statistical inference on persistence landscapes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw point clouds (sphere, torus or CSV subsample).
    Sample(SampleArgs),
    /// Rips persistence diagram of one point cloud.
    Persistence(PersistenceArgs),
    /// Landscape functionals of diagrams, one value per diagram.
    Landscape(LandscapeArgs),
    /// Confidence intervals for a sample.
    Ci(CiArgs),
    /// Cross-validated kernel density estimate and risk report.
    Density(DensityArgs),
    /// Leading-order integrated risk of a histogram or kernel estimator.
    Risk(RiskArgs),
    /// Run a whole experiment from a config file.
    Pipeline(PipelineArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ObjectArg {
    Sphere,
    Torus,
    Csv,
}

impl From<ObjectArg> for ObjectKind {
    fn from(o: ObjectArg) -> Self {
        match o {
            ObjectArg::Sphere => ObjectKind::Sphere,
            ObjectArg::Torus => ObjectKind::Torus,
            ObjectArg::Csv => ObjectKind::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum KernelArg {
    Gaussian,
    Tricube,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Gaussian => Kernel::Gaussian,
            KernelArg::Tricube => Kernel::Tricube,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    InterpInverse,
    Resample,
}

impl From<ModeArg> for ReplicateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::InterpInverse => ReplicateMode::InterpInverse,
            ModeArg::Resample => ReplicateMode::Resample,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StatisticArg {
    LogSum,
    Mean,
}

impl From<StatisticArg> for Statistic {
    fn from(s: StatisticArg) -> Self {
        match s {
            StatisticArg::LogSum => Statistic::LogSum,
            StatisticArg::Mean => Statistic::Mean,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum InfluenceArg {
    Literal,
    Exact,
}

impl From<InfluenceArg> for InfluenceMode {
    fn from(i: InfluenceArg) -> Self {
        match i {
            InfluenceArg::Literal => InfluenceMode::Literal,
            InfluenceArg::Exact => InfluenceMode::Exact,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ReductionArg {
    Cohomology,
    Naive,
}

impl From<ReductionArg> for ReductionMode {
    fn from(r: ReductionArg) -> Self {
        match r {
            ReductionArg::Cohomology => ReductionMode::Cohomology,
            ReductionArg::Naive => ReductionMode::Naive,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    All,
    NormalTheory,
    Delta,
    BootNormal,
    BootPivotal,
    BootStudentized,
    BootPercentile,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum RiskModeArg {
    Histogram,
    Kernel,
}

impl From<RiskModeArg> for RiskMode {
    fn from(r: RiskModeArg) -> Self {
        match r {
            RiskModeArg::Histogram => RiskMode::Histogram,
            RiskModeArg::Kernel => RiskMode::Kernel,
        }
    }
}

/// Config file plus per-key overrides. Unset flags keep the file's value
/// (or the default when no file is given).
#[derive(Args, Debug, Default)]
pub struct ConfigArgs {
    /// Flat TOML experiment file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub object: Option<ObjectArg>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub major_radius: Option<f64>,
    #[arg(long)]
    pub minor_radius: Option<f64>,
    #[arg(long)]
    pub csv_path: Option<PathBuf>,
    /// `all`, `wdbc`, `skip:0,1` or a list such as `2,3,4`.
    #[arg(long)]
    pub csv_columns: Option<String>,
    #[arg(long)]
    pub standardize: Option<bool>,
    #[arg(long)]
    pub n_points: Option<usize>,
    #[arg(long)]
    pub n_diagrams: Option<usize>,
    #[arg(long)]
    pub max_scale: Option<f64>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub simplex_cap: Option<usize>,
    #[arg(long)]
    pub homology_dim: Option<u8>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub bound: Option<f64>,
    #[arg(long = "B", alias = "bootstrap-b")]
    pub bootstrap_b: Option<usize>,
    #[arg(long, value_enum)]
    pub bootstrap_mode: Option<ModeArg>,
    #[arg(long)]
    pub inner_b: Option<usize>,
    #[arg(long, value_enum)]
    pub statistic: Option<StatisticArg>,
    #[arg(long, value_enum)]
    pub influence: Option<InfluenceArg>,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
    #[arg(long)]
    pub h_min: Option<f64>,
    #[arg(long)]
    pub h_max: Option<f64>,
    #[arg(long)]
    pub h_step: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "seed", alias = "master-seed")]
    pub master_seed: Option<u64>,
    #[arg(long, env = OUTPUT_DIR_ENV)]
    pub output_dir: Option<PathBuf>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> plstat_core::Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = &self.$field {
                    c.$field = v.clone().into();
                }
            )*};
        }
        set!(
            object,
            radius,
            major_radius,
            minor_radius,
            csv_columns,
            standardize,
            n_points,
            n_diagrams,
            max_scale,
            max_dim,
            simplex_cap,
            homology_dim,
            t_min,
            t_max,
            k,
            bound,
            bootstrap_b,
            bootstrap_mode,
            inner_b,
            statistic,
            influence,
            kernel,
            h_min,
            h_max,
            h_step,
            alpha,
            master_seed,
            output_dir
        );
        if let Some(p) = &self.csv_path {
            c.csv_path = Some(p.clone());
        }
        Ok(c)
    }
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Index of the first cloud.
    #[arg(long, default_value_t = 0)]
    pub index: u64,
    /// Number of consecutive clouds.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Output file, or directory (files `cloud_NNN.csv`) when `--count` > 1.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct PersistenceArgs {
    /// Point cloud CSV, one point per row.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 5.0)]
    pub max_scale: f64,
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    #[arg(long, default_value_t = plstat_core::rips::DEFAULT_SIMPLEX_CAP)]
    pub simplex_cap: usize,
    #[arg(long, value_enum, default_value = "cohomology")]
    pub reduction: ReductionArg,
    /// Diagram CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LandscapeArgs {
    /// Diagram CSV files, in sample order.
    #[arg(long = "in", num_args = 1.., required = true)]
    pub inputs: Vec<PathBuf>,
    /// Scale at which infinite bars are truncated.
    #[arg(long, default_value_t = 5.0)]
    pub max_scale: f64,
    #[arg(long, default_value_t = 1)]
    pub homology_dim: u8,
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 5.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 5.0)]
    pub bound: f64,
    /// Sample CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the landscape levels of the first diagram (`k,t,value`).
    #[arg(long)]
    pub curve_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CiArgs {
    /// Sample CSV (first column).
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long = "B", alias = "bootstrap-b", default_value_t = 500)]
    pub bootstrap_b: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "interp-inverse")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = plstat_core::bootstrap::DEFAULT_INNER_B)]
    pub inner_b: usize,
    #[arg(long, value_enum, default_value = "log-sum")]
    pub statistic: StatisticArg,
    #[arg(long, value_enum, default_value = "literal")]
    pub influence: InfluenceArg,
    /// Interval JSON; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub replicates_out: Option<PathBuf>,
    /// Also write `method,lower,upper,width`.
    #[arg(long)]
    pub table_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// Sample CSV (first column).
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "tricube")]
    pub kernel: KernelArg,
    #[arg(long, default_value_t = 0.002)]
    pub h_min: f64,
    #[arg(long, default_value_t = 0.3)]
    pub h_max: f64,
    #[arg(long, default_value_t = 0.002)]
    pub h_step: f64,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Directory for risk.json, cv_curve.csv, density.csv, kde_interval.json
    /// and plots. Without it the risk report is printed.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RiskArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub h: f64,
    #[arg(long, value_enum)]
    pub mode: RiskModeArg,
    /// `∫ (f′)²`, used by the histogram mode.
    #[arg(long, default_value_t = 0.0)]
    pub int_fprime_sq: f64,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
    /// `∫ (f″)²`, required by the kernel mode.
    #[arg(long)]
    pub int_fsecond_sq: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
}
