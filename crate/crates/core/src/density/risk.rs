use super::bandwidth::{histogram_optimal_binwidth, normal_reference_bandwidth, select_bandwidth};
use super::kde::{check_bandwidth, kde, sorted};
use super::{estimate_density_derivative, normal_curvature, sample_sd, Kernel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskMode {
    Histogram,
    Kernel,
}

/// Leading-order integrated risk split into squared bias and variance.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RiskTerms {
    pub bias: f64,
    pub variance: f64,
    pub total: f64,
}

/// Histogram: `h²/12 ∫(f′)² + 1/(nh)`.
/// Kernel: `¼ σ_K⁴ h⁴ ∫(f″)² + ∫K²/(nh)`.
pub fn estimated_risk(
    n: usize,
    h: f64,
    int_fprime_sq: f64,
    mode: RiskMode,
    kernel: Option<Kernel>,
    int_fsecond_sq: Option<f64>,
) -> Result<RiskTerms> {
    check_bandwidth(h)?;
    if n == 0 {
        return Err(Error::domain("risk needs n >= 1"));
    }
    let nh = n as f64 * h;
    let (bias, variance) = match mode {
        RiskMode::Histogram => {
            if !(int_fprime_sq >= 0.0) {
                return Err(Error::domain(format!(
                    "slope integral must be nonnegative, got {int_fprime_sq}"
                )));
            }
            (h * h / 12.0 * int_fprime_sq, 1.0 / nh)
        }
        RiskMode::Kernel => {
            let kernel = kernel.ok_or_else(|| Error::domain("kernel risk needs a kernel"))?;
            let a = int_fsecond_sq
                .ok_or_else(|| Error::domain("kernel risk needs the curvature integral"))?;
            if !(a >= 0.0) {
                return Err(Error::domain(format!(
                    "curvature integral must be nonnegative, got {a}"
                )));
            }
            let s2 = kernel.sigma_sq();
            (0.25 * s2 * s2 * h.powi(4) * a, kernel.roughness() / nh)
        }
    };
    Ok(RiskTerms {
        bias,
        variance,
        total: bias + variance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RiskAt {
    pub h: f64,
    pub bias: f64,
    pub variance: f64,
    pub total: f64,
}

/// Bandwidth selection and risk summary for one sample.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RiskReport {
    pub kernel: Kernel,
    pub n: usize,
    pub h_grid: Vec<f64>,
    pub j_scores: Vec<f64>,
    pub h_cv: f64,
    /// `None` when the slope estimate is not positive.
    pub h_star_hist: Option<f64>,
    pub h_star_kernel: f64,
    pub int_fprime_sq: f64,
    pub int_fsecond_sq: f64,
    pub derivative_skipped: usize,
    /// Kernel-mode risk at every grid bandwidth.
    pub risk_terms: Vec<RiskAt>,
}

impl RiskReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("risk report serialises")
    }

    /// CSV `h,j` of the cross-validation curve.
    pub fn cv_curve_csv(&self) -> String {
        let mut out = String::from("h,j\n");
        for (h, j) in self.h_grid.iter().zip(&self.j_scores) {
            out.push_str(&format!("{h},{j}\n"));
        }
        out
    }
}

/// CV sweep, normal-reference bandwidth, slope estimate from the CV density
/// with the reference bandwidth as cluster radius, histogram binwidth and
/// kernel-mode risk over the sweep. The curvature integral uses the normal
/// idealisation with the sample standard deviation.
pub fn risk_report(
    values: &[f64],
    kernel: Kernel,
    h_min: f64,
    h_max: f64,
    h_step: f64,
) -> Result<RiskReport> {
    let sel = select_bandwidth(values, kernel, h_min, h_max, h_step)?;
    let h_star_kernel = normal_reference_bandwidth(values, kernel)?;
    let data = sorted(values);
    let f_hat = kde(&data, sel.h_cv, kernel, &data)?;
    let deriv = estimate_density_derivative(&data, h_star_kernel, &f_hat)?;
    let n = data.len();
    let h_star_hist = histogram_optimal_binwidth(n, deriv.int_fprime_sq).ok();
    let a = normal_curvature(sample_sd(&data));
    let risk_terms = sel
        .h_grid
        .iter()
        .map(|&h| {
            estimated_risk(
                n,
                h,
                deriv.int_fprime_sq,
                RiskMode::Kernel,
                Some(kernel),
                Some(a),
            )
            .map(|r| RiskAt {
                h,
                bias: r.bias,
                variance: r.variance,
                total: r.total,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RiskReport {
        kernel,
        n,
        h_grid: sel.h_grid,
        j_scores: sel.scores,
        h_cv: sel.h_cv,
        h_star_hist,
        h_star_kernel,
        int_fprime_sq: deriv.int_fprime_sq,
        int_fsecond_sq: a,
        derivative_skipped: deriv.skipped,
        risk_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::kernel_optimal_bandwidth;

    #[test]
    fn histogram_arithmetic() {
        let flat = estimated_risk(100, 0.5, 0.0, RiskMode::Histogram, None, None).unwrap();
        assert_eq!(flat.bias, 0.0);
        assert_eq!(flat.total, 1.0 / 50.0);

        let r = estimated_risk(1000, 0.34908, 0.141047, RiskMode::Histogram, None, None).unwrap();
        assert!((r.bias - 0.0014323).abs() < 1e-7);
        assert!((r.variance - 0.0028647).abs() < 1e-7);
        assert!((r.total - 0.0042970).abs() < 1e-7);
        assert!((r.variance / r.bias - 2.0).abs() < 1e-3);
    }

    #[test]
    fn kernel_mode_needs_curvature() {
        assert!(estimated_risk(
            100,
            0.5,
            0.1,
            RiskMode::Kernel,
            Some(Kernel::Gaussian),
            None
        )
        .is_err());
        assert!(estimated_risk(100, 0.5, 0.1, RiskMode::Kernel, None, Some(1.0)).is_err());
    }

    #[test]
    fn kernel_optimum_is_stationary() {
        for kernel in [Kernel::Gaussian, Kernel::Tricube] {
            let (n, a) = (500, 0.2116);
            let h = kernel_optimal_bandwidth(kernel, a, n).unwrap();
            let total = |h| {
                estimated_risk(n, h, 0.0, RiskMode::Kernel, Some(kernel), Some(a))
                    .unwrap()
                    .total
            };
            let eps = 1e-5 * h;
            let slope = (total(h + eps) - total(h - eps)) / (2.0 * eps);
            // Relative to the size of either term's derivative.
            let scale = total(h) / h;
            assert!(slope.abs() < 1e-6 * scale, "{kernel:?}: {slope}");
        }
    }
}
