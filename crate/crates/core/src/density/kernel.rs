use std::f64::consts::PI;

use crate::{Error, Result};

/// Smoothing kernel: non-negative, integrates to one, symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `exp(−x²/2) / √(2π)`
    #[default]
    Gaussian,
    /// `(70/81)(1 − |x|³)³` on `[−1, 1]`
    Tricube,
}

impl Kernel {
    pub fn name(&self) -> &'static str {
        match self {
            Kernel::Gaussian => "gaussian",
            Kernel::Tricube => "tricube",
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Kernel::Gaussian => (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
            Kernel::Tricube => {
                let a = x.abs();
                if a >= 1.0 {
                    0.0
                } else {
                    let c = 1.0 - a * a * a;
                    70.0 / 81.0 * c * c * c
                }
            }
        }
    }

    /// Half-width beyond which the kernel is treated as zero. For the
    /// Gaussian the cut-off at 9 is below double-precision resolution
    /// (K(9)/K(0) ≈ 2.6e-18).
    pub fn reach(&self) -> f64 {
        match self {
            Kernel::Gaussian => 9.0,
            Kernel::Tricube => 1.0,
        }
    }

    /// `σ_K² = ∫ x² K(x) dx`.
    pub fn sigma_sq(&self) -> f64 {
        match self {
            Kernel::Gaussian => 1.0,
            Kernel::Tricube => 35.0 / 243.0,
        }
    }

    /// `∫ K(x)² dx`.
    pub fn roughness(&self) -> f64 {
        match self {
            Kernel::Gaussian => 1.0 / (2.0 * PI.sqrt()),
            Kernel::Tricube => 175.0 / 247.0,
        }
    }
}

impl std::str::FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" | "normal" => Ok(Kernel::Gaussian),
            "tricube" => Ok(Kernel::Tricube),
            _ => Err(Error::Format(format!("unknown kernel {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson on [a, b] with `m` (even) panels.
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
        let h = (b - a) / m as f64;
        let mut s = f(a) + f(b);
        for i in 1..m {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn moments_by_quadrature() {
        for k in [Kernel::Gaussian, Kernel::Tricube] {
            let r = k.reach() + 1.0;
            // Tricube has a kink at 0 and ±1: integrate piecewise.
            let q = |f: &dyn Fn(f64) -> f64| {
                simpson(f, -r, -1.0, 2000)
                    + simpson(f, -1.0, 0.0, 20000)
                    + simpson(f, 0.0, 1.0, 20000)
                    + simpson(f, 1.0, r, 2000)
            };
            assert!((q(&|x| k.eval(x)) - 1.0).abs() < 1e-8, "{k:?} mass");
            assert!(q(&|x| x * k.eval(x)).abs() < 1e-12, "{k:?} mean");
            assert!(
                (q(&|x| x * x * k.eval(x)) - k.sigma_sq()).abs() < 1e-8,
                "{k:?} sigma"
            );
            assert!(
                (q(&|x| k.eval(x).powi(2)) - k.roughness()).abs() < 1e-8,
                "{k:?} roughness"
            );
        }
    }

    #[test]
    fn frozen_constants() {
        assert!((Kernel::Gaussian.roughness() - 0.282095).abs() < 1e-6);
        assert!((Kernel::Tricube.sigma_sq() - 0.1440329).abs() < 1e-7);
        assert!((Kernel::Tricube.roughness() - 0.7085020).abs() < 1e-7);
    }

    #[test]
    fn point_values() {
        assert!((Kernel::Gaussian.eval(0.0) - 0.398942).abs() < 1e-6);
        assert!((Kernel::Tricube.eval(0.0) - 70.0 / 81.0).abs() < 1e-15);
        assert_eq!(Kernel::Tricube.eval(1.0), 0.0);
        assert_eq!(Kernel::Tricube.eval(-1.5), 0.0);
        assert!(Kernel::Gaussian.eval(3.0) > 0.0);
    }
}
