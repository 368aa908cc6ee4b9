use super::kde::sorted;
use super::{trapezoid, DensityEstimate};
use crate::{Error, Result};

/// Slope estimates of a density at the sample points.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DerivativeEstimate {
    /// `(x, f′(x))` in ascending `x`.
    pub points: Vec<(f64, f64)>,
    /// Sample points with no neighbour inside the cluster radius.
    pub skipped: usize,
    /// Trapezoid rule of `f′(x)²` over the estimated points.
    pub int_fprime_sq: f64,
    /// Mean of `f′(x)²` times the data range.
    pub riemann_fprime_sq: f64,
}

/// For each sample point `x`, averages `(f̂(x) − f̂(x₀)) / (x − x₀)` over the
/// cluster `{x₀ : 0 < |x − x₀| < h_star}`. `f̂` is read off `f_hat` by
/// linear interpolation, so tabulating it at the sample points makes the
/// quotients exact.
pub fn estimate_density_derivative(
    values: &[f64],
    h_star: f64,
    f_hat: &DensityEstimate,
) -> Result<DerivativeEstimate> {
    if !(h_star > 0.0 && h_star.is_finite()) {
        return Err(Error::domain(format!(
            "cluster radius must be positive, got {h_star}"
        )));
    }
    let data = sorted(values);
    let at: Vec<f64> = data.iter().map(|&x| f_hat.interpolate(x)).collect();
    let mut points = Vec::with_capacity(data.len());
    let mut skipped = 0;
    for (i, &x) in data.iter().enumerate() {
        let lo = data.partition_point(|&v| v <= x - h_star);
        let hi = data.partition_point(|&v| v < x + h_star);
        let mut sum = 0.0;
        let mut count = 0usize;
        for j in lo..hi {
            let dx = x - data[j];
            if dx != 0.0 {
                sum += (at[i] - at[j]) / dx;
                count += 1;
            }
        }
        if count == 0 {
            skipped += 1;
        } else {
            points.push((x, sum / count as f64));
        }
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let sq: Vec<f64> = points.iter().map(|p| p.1 * p.1).collect();
    let int_fprime_sq = trapezoid(&xs, &sq);
    let riemann_fprime_sq = if sq.is_empty() {
        0.0
    } else {
        sq.iter().sum::<f64>() / sq.len() as f64 * (data[data.len() - 1] - data[0])
    };
    Ok(DerivativeEstimate {
        points,
        skipped,
        int_fprime_sq,
        riemann_fprime_sq,
    })
}
