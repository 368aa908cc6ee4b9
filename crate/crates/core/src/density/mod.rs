//! Kernel density estimation, cross-validated bandwidths, optimal-bandwidth
//! rules and integrated-risk estimates.

mod bandwidth;
mod derivative;
mod histogram;
mod kde;
mod kernel;
mod risk;

pub use bandwidth::{
    cross_validation_score, histogram_optimal_binwidth, kernel_optimal_bandwidth,
    normal_reference_bandwidth, normal_reference_bandwidth_for, select_bandwidth,
    BandwidthSelection,
};
pub use derivative::{estimate_density_derivative, DerivativeEstimate};
pub use histogram::Histogram;
pub use kde::{kde, kde_interval, uniform_grid, DensityEstimate};
pub use kernel::Kernel;
pub use risk::{estimated_risk, risk_report, RiskAt, RiskMode, RiskReport, RiskTerms};

/// `∫ (f″)²` for a normal density with standard deviation `sigma`:
/// `3 / (8 √π σ⁵)`.
pub fn normal_curvature(sigma: f64) -> f64 {
    3.0 / (8.0 * std::f64::consts::PI.sqrt() * sigma.powi(5))
}

/// `∫ (f′)²` for a normal density with standard deviation `sigma`:
/// `1 / (4 √π σ³)`.
pub fn normal_slope_energy(sigma: f64) -> f64 {
    1.0 / (4.0 * std::f64::consts::PI.sqrt() * sigma.powi(3))
}

pub(crate) fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

/// Trapezoid rule over an ascending grid.
pub(crate) fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (y[0] + y[1]) * (x[1] - x[0]))
        .sum()
}
