use rayon::prelude::*;

use super::kde::{check_bandwidth, kernel_sum, sorted, uniform_grid};
use super::{normal_curvature, sample_sd, trapezoid, Kernel};
use crate::{Error, Result};

/// Upper bound on quadrature nodes for `∫ f̂²`.
const MAX_NODES: usize = 1 << 22;

/// `Ĵ(h) = ∫ f̂² − (2/n) Σ_i f̂₋ᵢ(X_i)`.
///
/// The square integral is a trapezoid rule over data ± 6h with at least
/// 2048 nodes and at most h/16 spacing; the leave-one-out sums are exact.
pub fn cross_validation_score(values: &[f64], h: f64, kernel: Kernel) -> Result<f64> {
    check_bandwidth(h)?;
    let n = values.len();
    if n < 2 {
        return Err(Error::domain(format!(
            "cross-validation needs n >= 2, got {n}"
        )));
    }
    let data = sorted(values);
    let (lo, hi) = (data[0] - 6.0 * h, data[n - 1] + 6.0 * h);
    let nodes = (((hi - lo) / (h / 16.0)).ceil() as usize + 1).clamp(2048, MAX_NODES);
    let grid = uniform_grid(lo, hi, nodes);
    let scale = 1.0 / (n as f64 * h);
    let sq: Vec<f64> = grid
        .iter()
        .map(|&x| (scale * kernel_sum(&data, x, h, kernel)).powi(2))
        .collect();
    let int_sq = trapezoid(&grid, &sq);

    let reach = kernel.reach() * h;
    let mut pairs = 0.0;
    for i in 0..n {
        for &xj in data[i + 1..]
            .iter()
            .take_while(|&&xj| xj - data[i] <= reach)
        {
            pairs += kernel.eval((data[i] - xj) / h);
        }
    }
    let loo_total = 2.0 * pairs / ((n - 1) as f64 * h);
    Ok(int_sq - 2.0 / n as f64 * loo_total)
}

/// Cross-validation sweep over an arithmetic bandwidth grid.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BandwidthSelection {
    pub h_grid: Vec<f64>,
    pub scores: Vec<f64>,
    pub h_cv: f64,
    pub j_min: f64,
}

/// Evaluates `Ĵ` at `h_min, h_min + h_step, …, ≤ h_max` and returns the
/// minimiser; ties go to the smallest bandwidth.
pub fn select_bandwidth(
    values: &[f64],
    kernel: Kernel,
    h_min: f64,
    h_max: f64,
    h_step: f64,
) -> Result<BandwidthSelection> {
    if !(h_min > 0.0 && h_max > h_min && h_step > 0.0 && h_max.is_finite()) {
        return Err(Error::domain(format!(
            "bandwidth grid needs 0 < h_min < h_max and h_step > 0, got ({h_min}, {h_max}, {h_step})"
        )));
    }
    let count = ((h_max - h_min) / h_step + 1e-9).floor() as usize + 1;
    let h_grid: Vec<f64> = (0..count).map(|k| h_min + k as f64 * h_step).collect();
    if h_grid.is_empty() {
        return Err(Error::domain("empty bandwidth grid"));
    }
    let scores = h_grid
        .par_iter()
        .map(|&h| cross_validation_score(values, h, kernel))
        .collect::<Result<Vec<f64>>>()?;
    let mut best = 0;
    for (k, &s) in scores.iter().enumerate() {
        if s < scores[best] {
            best = k;
        }
    }
    Ok(BandwidthSelection {
        h_cv: h_grid[best],
        j_min: scores[best],
        h_grid,
        scores,
    })
}

/// `h* = n^{−1/3} (6 / ∫(f′)²)^{1/3}`.
pub fn histogram_optimal_binwidth(n: usize, int_fprime_sq: f64) -> Result<f64> {
    if !(int_fprime_sq > 0.0 && int_fprime_sq.is_finite()) {
        return Err(Error::domain(format!(
            "optimal binwidth needs a positive finite slope integral, got {int_fprime_sq}"
        )));
    }
    if n == 0 {
        return Err(Error::domain("optimal binwidth needs n >= 1"));
    }
    Ok((6.0 / int_fprime_sq).cbrt() / (n as f64).cbrt())
}

/// `h* = (∫K² / (σ_K⁴ A n))^{1/5}` with `A = ∫ (f″)²`.
pub fn kernel_optimal_bandwidth(kernel: Kernel, int_fsecond_sq: f64, n: usize) -> Result<f64> {
    if !(int_fsecond_sq > 0.0 && int_fsecond_sq.is_finite()) || n == 0 {
        return Err(Error::domain(format!(
            "optimal bandwidth needs a positive curvature integral and n >= 1, got {int_fsecond_sq}, n={n}"
        )));
    }
    let s2 = kernel.sigma_sq();
    Ok((kernel.roughness() / (s2 * s2 * int_fsecond_sq * n as f64)).powf(0.2))
}

/// Normal reference rule for a normal density with standard deviation `sigma`.
pub fn normal_reference_bandwidth_for(kernel: Kernel, sigma: f64, n: usize) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::domain(format!(
            "normal reference rule needs positive spread, got {sigma}"
        )));
    }
    kernel_optimal_bandwidth(kernel, normal_curvature(sigma), n)
}

/// Normal reference rule with `σ` the sample standard deviation.
pub fn normal_reference_bandwidth(values: &[f64], kernel: Kernel) -> Result<f64> {
    let n = values.len();
    if n < 2 {
        return Err(Error::domain(format!(
            "normal reference rule needs n >= 2, got {n}"
        )));
    }
    let sd = sample_sd(values);
    if sd == 0.0 {
        return Err(Error::domain(
            "normal reference rule needs nonzero sample variance",
        ));
    }
    normal_reference_bandwidth_for(kernel, sd, n)
}
