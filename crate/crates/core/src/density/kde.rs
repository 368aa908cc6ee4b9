use std::fmt::Write as _;
use std::path::Path;

use super::{trapezoid, Kernel};
use crate::inference::{CiMethod, ConfidenceInterval};
use crate::{Error, Result};

/// A kernel density estimate tabulated on a grid.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DensityEstimate {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub bandwidth: f64,
    pub kernel: Kernel,
    pub n: usize,
}

impl DensityEstimate {
    /// Trapezoid integral of the tabulated values.
    pub fn mass(&self) -> f64 {
        trapezoid(&self.grid, &self.values)
    }

    /// Linear interpolation between grid nodes, zero outside the grid.
    pub fn interpolate(&self, x: f64) -> f64 {
        let g = &self.grid;
        if g.is_empty() || x < g[0] || x > g[g.len() - 1] {
            return 0.0;
        }
        let j = g.partition_point(|&v| v <= x);
        if j == g.len() {
            return self.values[g.len() - 1];
        }
        let (x0, x1) = (g[j - 1], g[j]);
        let (y0, y1) = (self.values[j - 1], self.values[j]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Two-column CSV `x,density`.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("x,density\n");
        for (x, y) in self.grid.iter().zip(&self.values) {
            let _ = writeln!(out, "{x},{y}");
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }
}

/// `count` equally spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect()
}

pub(crate) fn check_bandwidth(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "bandwidth must be positive, got {h}"
        )))
    }
}

pub(crate) fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// `Σ_i K((x − X_i)/h)` over sorted data, restricted to the kernel's reach.
pub(crate) fn kernel_sum(sorted: &[f64], x: f64, h: f64, kernel: Kernel) -> f64 {
    let r = kernel.reach() * h;
    let lo = sorted.partition_point(|&v| v < x - r);
    let hi = sorted.partition_point(|&v| v <= x + r);
    sorted[lo..hi]
        .iter()
        .map(|&xi| kernel.eval((x - xi) / h))
        .sum()
}

/// `f̂(x) = (1/(n h)) Σ_i K((x − X_i)/h)` at every grid point.
pub fn kde(values: &[f64], h: f64, kernel: Kernel, grid: &[f64]) -> Result<DensityEstimate> {
    check_bandwidth(h)?;
    if values.is_empty() {
        return Err(Error::domain("kernel density estimate of an empty sample"));
    }
    if grid.is_empty() {
        return Err(Error::domain("empty evaluation grid"));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain("evaluation grid must be ascending"));
    }
    let data = sorted(values);
    let scale = 1.0 / (data.len() as f64 * h);
    let out = grid
        .iter()
        .map(|&x| scale * kernel_sum(&data, x, h, kernel))
        .collect();
    Ok(DensityEstimate {
        grid: grid.to_vec(),
        values: out,
        bandwidth: h,
        kernel,
        n: data.len(),
    })
}

/// Interval between the `α/2` and `1 − α/2` quantiles of the distribution
/// whose density is the normalised estimate. The CDF is the cumulative
/// trapezoid rule on the grid, inverted by linear interpolation. The
/// `statistic` field holds the median.
pub fn kde_interval(estimate: &DensityEstimate, alpha: f64) -> Result<ConfidenceInterval> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let g = &estimate.grid;
    if g.len() < 2 || g.len() != estimate.values.len() {
        return Err(Error::domain("degenerate density grid"));
    }
    let mut cdf = Vec::with_capacity(g.len());
    cdf.push(0.0);
    for i in 1..g.len() {
        let step = 0.5 * (estimate.values[i - 1] + estimate.values[i]) * (g[i] - g[i - 1]);
        cdf.push(cdf[i - 1] + step);
    }
    let total = cdf[g.len() - 1];
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::domain("density estimate has no mass on its grid"));
    }
    let quantile = |p: f64| {
        let target = p * total;
        let j = cdf.partition_point(|&c| c < target).clamp(1, g.len() - 1);
        let (c0, c1) = (cdf[j - 1], cdf[j]);
        if c1 > c0 {
            g[j - 1] + (g[j] - g[j - 1]) * (target - c0) / (c1 - c0)
        } else {
            g[j - 1]
        }
    };
    Ok(ConfidenceInterval {
        method: CiMethod::KdeQuantile,
        level: 1.0 - alpha,
        lower: quantile(alpha / 2.0),
        upper: quantile(1.0 - alpha / 2.0),
        statistic: quantile(0.5),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_values() {
        let g = [0.0];
        let one = kde(&[0.0], 1.0, Kernel::Gaussian, &g).unwrap();
        assert!((one.values[0] - 0.398942).abs() < 1e-6);
        let two = kde(&[-1.0, 1.0], 1.0, Kernel::Gaussian, &g).unwrap();
        assert!((two.values[0] - 0.241971).abs() < 1e-6);
        let tri = kde(&[0.0], 1.0, Kernel::Tricube, &[0.0, 1.0, 2.0]).unwrap();
        assert!((tri.values[0] - 0.864198).abs() < 1e-6);
        assert_eq!(&tri.values[1..], &[0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(kde(&[0.0], 0.0, Kernel::Gaussian, &[0.0]).is_err());
        assert!(kde(&[0.0], -1.0, Kernel::Gaussian, &[0.0]).is_err());
        assert!(kde(&[0.0], 1.0, Kernel::Gaussian, &[]).is_err());
        assert!(kde(&[], 1.0, Kernel::Gaussian, &[0.0]).is_err());
    }

    #[test]
    fn normalisation() {
        let data = [0.3, -1.2, 0.8, 2.5, 2.6, -0.1];
        for (kernel, pad) in [(Kernel::Gaussian, 6.0), (Kernel::Tricube, 1.0)] {
            let h = 0.4;
            let grid = uniform_grid(-1.2 - pad * h, 2.6 + pad * h, 4001);
            let m = kde(&data, h, kernel, &grid).unwrap().mass();
            assert!((0.99..=1.001).contains(&m), "{kernel:?}: {m}");
        }
    }

    #[test]
    fn symmetric_interval() {
        let data = [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0];
        let est = kde(&data, 0.5, Kernel::Tricube, &uniform_grid(-3.0, 3.0, 2001)).unwrap();
        let ci = kde_interval(&est, 0.1).unwrap();
        assert!((ci.lower + ci.upper).abs() < 1e-3);
        assert!(ci.statistic.abs() < 1e-3);
        let collapsed = kde_interval(&est, 1.0).unwrap();
        assert!(collapsed.width().abs() < 1e-9);
        assert!((collapsed.lower - ci.statistic).abs() < 1e-9);
        assert!(kde_interval(&est, 0.0).is_err());
    }

    #[test]
    fn degenerate_grid() {
        let est = kde(&[0.0], 1.0, Kernel::Gaussian, &[0.0]).unwrap();
        assert!(kde_interval(&est, 0.05).is_err());
        let far = kde(&[0.0], 0.1, Kernel::Tricube, &[5.0, 6.0]).unwrap();
        assert!(kde_interval(&far, 0.05).is_err());
    }

    #[test]
    fn interpolation() {
        let est = kde(&[0.0], 1.0, Kernel::Gaussian, &[0.0, 1.0]).unwrap();
        let mid = est.interpolate(0.5);
        assert!((mid - 0.5 * (est.values[0] + est.values[1])).abs() < 1e-15);
        assert_eq!(est.interpolate(2.0), 0.0);
        assert_eq!(est.interpolate(1.0), est.values[1]);
    }
}
