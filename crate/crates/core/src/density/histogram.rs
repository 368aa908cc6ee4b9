use crate::{Error, Result};

/// Equal-width histogram density estimate anchored at the sample minimum.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Histogram {
    pub origin: f64,
    pub width: f64,
    pub counts: Vec<usize>,
    pub n: usize,
}

impl Histogram {
    /// Bins `[min + j h, min + (j+1) h)` covering `[min, max]`; the maximum
    /// falls in the last bin.
    pub fn new(values: &[f64], width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::domain(format!(
                "binwidth must be positive, got {width}"
            )));
        }
        if values.is_empty() {
            return Err(Error::domain("histogram of an empty sample"));
        }
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let bins = (((max - min) / width).floor() as usize + 1).max(1);
        let mut counts = vec![0; bins];
        for &v in values {
            let j = (((v - min) / width).floor() as usize).min(bins - 1);
            counts[j] += 1;
        }
        Ok(Self {
            origin: min,
            width,
            counts,
            n: values.len(),
        })
    }

    pub fn density(&self, x: f64) -> f64 {
        let r = (x - self.origin) / self.width;
        if r < 0.0 || r >= self.counts.len() as f64 {
            return 0.0;
        }
        self.counts[r as usize] as f64 / (self.n as f64 * self.width)
    }

    /// `(lo, hi, height)` per bin.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let scale = 1.0 / (self.n as f64 * self.width);
        self.counts.iter().enumerate().map(move |(j, &c)| {
            let lo = self.origin + j as f64 * self.width;
            (lo, lo + self.width, c as f64 * scale)
        })
    }
}
