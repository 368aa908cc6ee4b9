//! Bootstrap replicates, bootstrap variance and the four bootstrap
//! confidence intervals (normal, pivotal, studentized, percentile).
//!
//! Replicate `b` of a run always draws from substream `b` of the run's
//! stream, so a run is a pure function of `(sample, B, mode, statistic,
//! stream)` whether or not it is computed in parallel.

use rand::Rng;
use rayon::prelude::*;

use crate::inference::{
    check_alpha, normal_upper_quantile, symmetric, CiMethod, ConfidenceInterval, EcdfModel,
    Statistic,
};
use crate::landscape::Sample;
use crate::{Error, Result, RngStream};

/// How a bootstrap sample is drawn from the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplicateMode {
    /// Inverse transform of the linearly interpolated empirical CDF.
    #[default]
    InterpInverse,
    /// Classical resampling with replacement.
    Resample,
}

impl ReplicateMode {
    pub fn name(&self) -> &'static str {
        match self {
            ReplicateMode::InterpInverse => "interp_inverse",
            ReplicateMode::Resample => "resample",
        }
    }
}

impl std::str::FromStr for ReplicateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interp_inverse" | "interp" => Ok(Self::InterpInverse),
            "resample" => Ok(Self::Resample),
            _ => Err(Error::Format(format!("unknown bootstrap mode {s:?}"))),
        }
    }
}

/// Inverse of the interpolated empirical CDF at `r ∈ (0, 1]`.
///
/// The CDF rises linearly by `1/n` across each segment `[y_(i−1), y_(i)]`,
/// with the anchor `y_(0) = 0`; segment `i` holds `(i−1)/n < r ≤ i/n` and
/// has slope `a_i = (y_(i) − y_(i−1)) / (1/n)`. For positive, distinct data
/// the result is continuous and strictly increasing in `r`.
pub fn inverse_transform(sorted: &[f64], r: f64) -> f64 {
    let n = sorted.len();
    let nf = n as f64;
    let i = ((r * nf).ceil() as usize).clamp(1, n);
    let prev = if i == 1 { 0.0 } else { sorted[i - 2] };
    let slope = (sorted[i - 1] - prev) * nf;
    prev + slope * (r - (i - 1) as f64 / nf)
}

fn draw_variates<R: Rng>(ecdf: &EcdfModel, count: usize, rng: &mut R) -> Vec<f64> {
    let sorted = ecdf.sorted_values();
    (0..count)
        .map(|_| {
            // random() is in [0, 1); flip it onto (0, 1].
            let r = 1.0 - rng.random::<f64>();
            inverse_transform(sorted, r)
        })
        .collect()
}

/// `count` variates from the interpolated empirical CDF.
pub fn random_variate(ecdf: &EcdfModel, count: usize, stream: RngStream) -> Vec<f64> {
    draw_variates(ecdf, count, &mut stream.rng())
}

fn draw_sample<R: Rng>(ecdf: &EcdfModel, mode: ReplicateMode, rng: &mut R) -> Vec<f64> {
    let n = ecdf.len();
    match mode {
        ReplicateMode::InterpInverse => draw_variates(ecdf, n, rng),
        ReplicateMode::Resample => {
            let data = ecdf.sorted_values();
            (0..n).map(|_| data[rng.random_range(0..n)]).collect()
        }
    }
}

/// Replicates `T*_1, …, T*_B` together with everything needed to redraw them.
#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapRun {
    replicates: Vec<f64>,
    pub mode: ReplicateMode,
    pub statistic: Statistic,
    pub stream: RngStream,
}

impl BootstrapRun {
    pub fn replicates(&self) -> &[f64] {
        &self.replicates
    }

    pub fn len(&self) -> usize {
        self.replicates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.replicates.is_empty()
    }

    /// CSV with header `replicate` and one `T*_b` per row.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("replicate\n");
        for v in &self.replicates {
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}

/// Draws `b_count` bootstrap samples of the data and evaluates `statistic`
/// on each.
pub fn bootstrap_replicates(
    sample: &Sample,
    b_count: usize,
    mode: ReplicateMode,
    statistic: Statistic,
    stream: RngStream,
) -> Result<BootstrapRun> {
    if b_count == 0 {
        return Err(Error::domain("bootstrap needs B >= 1"));
    }
    let ecdf = EcdfModel::from_values(sample.values())?;
    let replicates = (0..b_count)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream.child(b as u64).rng();
            let xs = draw_sample(&ecdf, mode, &mut rng);
            statistic.evaluate(&xs).map_err(|e| Error::at_index(b, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BootstrapRun {
        replicates,
        mode,
        statistic,
        stream,
    })
}

/// `v_boot = (1/B) Σ (T*_b − mean T*)²`.
pub fn bootstrap_variance(run: &BootstrapRun) -> f64 {
    population_variance(&run.replicates)
}

/// Welford's update; exactly zero for constant input.
fn population_variance(xs: &[f64]) -> f64 {
    let (mut mean, mut m2) = (0.0, 0.0);
    for (k, &x) in xs.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (x - mean);
    }
    m2 / xs.len() as f64
}

/// Type-1 empirical quantile: the order statistic at index `⌈β·B⌉`,
/// clamped to `[1, B]`. A relative slack of 1e-9 absorbs rounding in `β·B`
/// so that e.g. `0.975·1000` selects index 975.
pub fn quantile(values: &[f64], beta: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::domain("quantile of an empty vector"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted_quantile(&sorted, beta))
}

fn sorted_quantile(sorted: &[f64], beta: f64) -> f64 {
    let b = sorted.len();
    let pos = beta * b as f64;
    let idx = ((pos - 1e-9 * pos.abs().max(1.0)).ceil() as isize).clamp(1, b as isize) as usize;
    sorted[idx - 1]
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// `T_n ± z_{α/2} √v_boot`.
pub fn ci_boot_normal(
    sample: &Sample,
    run: &BootstrapRun,
    alpha: f64,
) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let t = run.statistic.evaluate(sample.values())?;
    Ok(symmetric(
        CiMethod::BootNormal,
        alpha,
        t,
        bootstrap_variance(run).sqrt(),
    ))
}

/// `(2T_n − θ*_{1−α/2}, 2T_n − θ*_{α/2})`.
pub fn ci_boot_pivotal(
    sample: &Sample,
    run: &BootstrapRun,
    alpha: f64,
) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let t = run.statistic.evaluate(sample.values())?;
    let s = sorted(&run.replicates);
    Ok(ConfidenceInterval {
        method: CiMethod::BootPivotal,
        level: 1.0 - alpha,
        lower: 2.0 * t - sorted_quantile(&s, 1.0 - alpha / 2.0),
        upper: 2.0 * t - sorted_quantile(&s, alpha / 2.0),
        statistic: t,
    })
}

/// `(θ*_{α/2}, θ*_{1−α/2})`. The statistic field holds the replicate median.
pub fn ci_boot_percentile(run: &BootstrapRun, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let s = sorted(&run.replicates);
    Ok(ConfidenceInterval {
        method: CiMethod::BootPercentile,
        level: 1.0 - alpha,
        lower: sorted_quantile(&s, alpha / 2.0),
        upper: sorted_quantile(&s, 1.0 - alpha / 2.0),
        statistic: sorted_quantile(&s, 0.5),
    })
}

/// Studentized interval plus the number of replicates whose inner standard
/// error was zero and were therefore left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentizedInterval {
    pub interval: ConfidenceInterval,
    pub dropped: usize,
}

/// Default size of the inner bootstrap used for per-replicate standard errors.
pub const DEFAULT_INNER_B: usize = 25;

/// `(T_n − z*_{1−α/2}·ŝe_boot, T_n − z*_{α/2}·ŝe_boot)` with
/// `Z*_b = (T*_b − T_n)/ŝe*_b` and `ŝe_boot = √v_boot`.
///
/// `ŝe*_b` comes from a nested bootstrap of size `inner_b` on the `b`-th
/// bootstrap sample, which is redrawn from the run's substream `b`.
pub fn ci_boot_studentized(
    sample: &Sample,
    run: &BootstrapRun,
    alpha: f64,
    inner_b: usize,
) -> Result<StudentizedInterval> {
    check_alpha(alpha)?;
    if inner_b < 2 {
        return Err(Error::domain(format!(
            "inner bootstrap size must be >= 2, got {inner_b}"
        )));
    }
    let t = run.statistic.evaluate(sample.values())?;
    let se_boot = bootstrap_variance(run).sqrt();
    let ecdf = EcdfModel::from_values(sample.values())?;

    let z: Vec<Option<f64>> = (0..run.len())
        .into_par_iter()
        .map(|b| {
            let outer = run.stream.child(b as u64);
            let xs = draw_sample(&ecdf, run.mode, &mut outer.rng());
            let inner_ecdf = EcdfModel::from_values(&xs)?;
            let inner = (0..inner_b)
                .map(|j| {
                    let ys = draw_sample(&inner_ecdf, run.mode, &mut outer.child(j as u64).rng());
                    run.statistic.evaluate(&ys)
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::at_index(b, e))?;
            let se_b = population_variance(&inner).sqrt();
            Ok((se_b > 0.0).then(|| (run.replicates[b] - t) / se_b))
        })
        .collect::<Result<Vec<_>>>()?;

    let dropped = z.iter().filter(|v| v.is_none()).count();
    let z: Vec<f64> = sorted(&z.into_iter().flatten().collect::<Vec<_>>());
    let (lower, upper) = if z.is_empty() || se_boot == 0.0 {
        (t, t)
    } else {
        (
            t - sorted_quantile(&z, 1.0 - alpha / 2.0) * se_boot,
            t - sorted_quantile(&z, alpha / 2.0) * se_boot,
        )
    };
    Ok(StudentizedInterval {
        interval: ConfidenceInterval {
            method: CiMethod::BootStudentized,
            level: 1.0 - alpha,
            lower,
            upper,
            statistic: t,
        },
        dropped,
    })
}

/// All four bootstrap intervals from one run.
pub fn all_bootstrap_intervals(
    sample: &Sample,
    run: &BootstrapRun,
    alpha: f64,
    inner_b: usize,
) -> Result<[ConfidenceInterval; 4]> {
    Ok([
        ci_boot_normal(sample, run, alpha)?,
        ci_boot_pivotal(sample, run, alpha)?,
        ci_boot_studentized(sample, run, alpha, inner_b)?.interval,
        ci_boot_percentile(run, alpha)?,
    ])
}

/// Tail probability used by the normal interval, exposed for reporting.
pub fn normal_critical_value(alpha: f64) -> f64 {
    normal_upper_quantile(alpha / 2.0)
}
