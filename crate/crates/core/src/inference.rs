//! Empirical CDF, plug-in statistics, influence-function standard errors and
//! normal-approximation confidence intervals.

use crate::landscape::Sample;
use crate::{Error, Result};

/// Right-continuous empirical distribution function.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfModel {
    sorted: Vec<f64>,
}

impl EcdfModel {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("empirical CDF of an empty sample"));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// F̂(x) = #{X_i ≤ x} / n.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|v| *v <= x) as f64 / self.sorted.len() as f64
    }
}

pub fn ecdf(sample: &Sample) -> Result<EcdfModel> {
    EcdfModel::from_values(sample.values())
}

/// The functional `T` whose plug-in value `T(F̂_n)` is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// `log Σ Y_i`.
    #[default]
    LogSum,
    /// `(1/n) Σ Y_i`.
    Mean,
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::LogSum => "log_sum",
            Statistic::Mean => "mean",
        }
    }

    pub fn evaluate(&self, values: &[f64]) -> Result<f64> {
        if values.is_empty() {
            return Err(Error::domain("statistic of an empty sample"));
        }
        let sum: f64 = values.iter().sum();
        match self {
            Statistic::LogSum if sum > 0.0 => Ok(sum.ln()),
            Statistic::LogSum => Err(Error::domain(format!(
                "log-sum needs a positive sum, got {sum}"
            ))),
            Statistic::Mean => Ok(sum / values.len() as f64),
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log_sum" | "log-sum" | "logsum" => Ok(Statistic::LogSum),
            "mean" => Ok(Statistic::Mean),
            _ => Err(Error::Format(format!("unknown statistic {s:?}"))),
        }
    }
}

/// `log Σ Y_i`, the default plug-in statistic.
pub fn plugin_statistic(sample: &Sample) -> Result<f64> {
    Statistic::LogSum.evaluate(sample.values())
}

/// How the empirical influence values are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfluenceMode {
    /// `L̂(Y_i) = Y_i − T(F̂_n)`: the linear-functional formula applied to
    /// the statistic as-is, with the uncentred mean of `L̂²`.
    #[default]
    Literal,
    /// The influence function of the statistic itself. For `log Σ Y` this is
    /// `(Y_i − Ȳ)/Ȳ` (log of the mean functional); for the mean, `Y_i − Ȳ`.
    Exact,
}

impl std::str::FromStr for InfluenceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(InfluenceMode::Literal),
            "exact" | "corrected" => Ok(InfluenceMode::Exact),
            _ => Err(Error::Format(format!("unknown influence mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfluenceSe {
    pub se: f64,
    pub tau_sq: f64,
}

/// Standard error from empirical influence values: `τ̂² = (1/n) Σ L̂²`,
/// `ŝe = τ̂/√n`.
pub fn influence_se(
    sample: &Sample,
    statistic: Statistic,
    mode: InfluenceMode,
) -> Result<InfluenceSe> {
    let y = sample.values();
    let t = statistic.evaluate(y)?;
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let influence = |v: f64| match (mode, statistic) {
        (InfluenceMode::Literal, _) => v - t,
        (InfluenceMode::Exact, Statistic::LogSum) => (v - mean) / mean,
        (InfluenceMode::Exact, Statistic::Mean) => v - mean,
    };
    let tau_sq = y.iter().map(|&v| influence(v).powi(2)).sum::<f64>() / n;
    Ok(InfluenceSe {
        se: tau_sq.sqrt() / n.sqrt(),
        tau_sq,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiMethod {
    NormalTheory,
    Delta,
    BootNormal,
    BootPivotal,
    BootStudentized,
    BootPercentile,
    /// Quantiles of a normalised kernel density estimate.
    KdeQuantile,
}

impl CiMethod {
    pub fn name(&self) -> &'static str {
        match self {
            CiMethod::NormalTheory => "normal_theory",
            CiMethod::Delta => "delta",
            CiMethod::BootNormal => "boot_normal",
            CiMethod::BootPivotal => "boot_pivotal",
            CiMethod::BootStudentized => "boot_studentized",
            CiMethod::BootPercentile => "boot_percentile",
            CiMethod::KdeQuantile => "kde_quantile",
        }
    }
}

/// A two-sided interval with its nominal level `1 − α`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ConfidenceInterval {
    pub method: CiMethod,
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
    /// Point estimate the interval is built around.
    pub statistic: f64,
}

impl ConfidenceInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("interval serialises")
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

/// `T(F̂_n) ± z_{α/2}·ŝe` with the influence-function standard error.
pub fn delta_ci(
    sample: &Sample,
    alpha: f64,
    statistic: Statistic,
    mode: InfluenceMode,
) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let t = statistic.evaluate(sample.values())?;
    let se = influence_se(sample, statistic, mode)?.se;
    Ok(symmetric(CiMethod::Delta, alpha, t, se))
}

/// `Ȳ ± z*·S_n/√n` with the `(n − 1)`-denominator sample variance.
pub fn normal_theory_ci(sample: &Sample, alpha: f64) -> Result<ConfidenceInterval> {
    check_alpha(alpha)?;
    let y = sample.values();
    let n = y.len();
    if n < 2 {
        return Err(Error::domain(format!(
            "sample too small: normal-theory interval needs n >= 2, got {n}"
        )));
    }
    let mean = y.iter().sum::<f64>() / n as f64;
    let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(symmetric(
        CiMethod::NormalTheory,
        alpha,
        mean,
        var.sqrt() / (n as f64).sqrt(),
    ))
}

pub(crate) fn symmetric(method: CiMethod, alpha: f64, center: f64, se: f64) -> ConfidenceInterval {
    let half = normal_upper_quantile(alpha / 2.0) * se;
    ConfidenceInterval {
        method,
        level: 1.0 - alpha,
        lower: center - half,
        upper: center + half,
        statistic: center,
    }
}

/// `z` with `P(Z > z) = p` for a standard normal `Z`.
pub fn normal_upper_quantile(p: f64) -> f64 {
    -normal_quantile(p)
}

/// Inverse standard-normal CDF.
///
/// Acklam's rational approximation (relative error below 1.2e-9) followed
/// by one Halley step against `erfc`, which brings the result to near
/// machine precision.
pub fn normal_quantile(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    #[allow(clippy::excessive_precision)]
    const A: [f64; 6] = [
        -3.969683028665376e1,
        2.209460984245205e2,
        -2.759285104469687e2,
        1.383577518672690e2,
        -3.066479806614716e1,
        2.506628277459239e0,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e1,
        1.615858368580409e2,
        -1.556989798598866e2,
        6.680131188771972e1,
        -1.328068155288572e1,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-3,
        -3.223964580411365e-1,
        -2.400758277161838e0,
        -2.549732539343734e0,
        4.374664141464968e0,
        2.938163982698783e0,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-3,
        3.224671290700398e-1,
        2.445134137142996e0,
        3.754408661907416e0,
    ];
    const P_LOW: f64 = 0.02425;

    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let e = 0.5 * libm::erfc(-x / std::f64::consts::SQRT_2) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    x - u / (1.0 + x * u / 2.0)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}
