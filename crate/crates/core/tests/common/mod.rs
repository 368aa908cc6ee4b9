//! Test-only oracles, independent of the library's implementation paths.
#![allow(dead_code)]

use plstat_core::RngStream;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn normal_sample(n: usize, stream: RngStream) -> Vec<f64> {
    let mut rng = stream.rng();
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Random cloud of 1..=6 points; half of the clouds use integer
/// coordinates to force tied filtration values.
pub fn small_cloud(stream: RngStream) -> Vec<Vec<f64>> {
    let mut rng = stream.rng();
    let n = rng.random_range(1..=6);
    let d = rng.random_range(1..=3);
    let ints = rng.random_bool(0.5);
    (0..n)
        .map(|_| {
            (0..d)
                .map(|_| {
                    if ints {
                        rng.random_range(0..3) as f64
                    } else {
                        rng.random::<f64>() * 2.0
                    }
                })
                .collect()
        })
        .collect()
}

/// Persistence of the Rips filtration up to triangles by dense GF(2)
/// column reduction with bitmask columns (at most 64 simplices).
/// Returns sorted `(dim, birth, death)` with zero-length pairs dropped and
/// `f64::INFINITY` for essential classes in dimensions 0 and 1.
pub fn dense_rips_persistence(points: &[Vec<f64>], max_scale: f64) -> Vec<(u8, f64, f64)> {
    let n = points.len();
    // (value, dim, vertices)
    let mut simplices: Vec<(f64, u8, Vec<usize>)> = (0..n).map(|v| (0.0, 0, vec![v])).collect();
    for a in 0..n {
        for b in a + 1..n {
            let d = euclid(&points[a], &points[b]);
            if d <= max_scale {
                simplices.push((d, 1, vec![a, b]));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let v = euclid(&points[a], &points[b])
                    .max(euclid(&points[a], &points[c]))
                    .max(euclid(&points[b], &points[c]));
                if v <= max_scale {
                    simplices.push((v, 2, vec![a, b, c]));
                }
            }
        }
    }
    simplices.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    assert!(simplices.len() <= 64);
    let index_of = |verts: &[usize]| simplices.iter().position(|s| s.2 == verts).unwrap();

    let mut cols: Vec<u64> = simplices
        .iter()
        .map(|s| {
            let mut m = 0u64;
            if s.2.len() > 1 {
                for skip in 0..s.2.len() {
                    let face: Vec<usize> =
                        s.2.iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, v)| *v)
                            .collect();
                    m ^= 1 << index_of(&face);
                }
            }
            m
        })
        .collect();
    let low = |m: u64| {
        if m == 0 {
            None
        } else {
            Some(63 - m.leading_zeros() as usize)
        }
    };
    let mut paired = vec![false; simplices.len()];
    let mut out = Vec::new();
    for j in 0..cols.len() {
        while let Some(l) = low(cols[j]) {
            let Some(k) = (0..j).find(|&k| low(cols[k]) == Some(l)) else {
                break;
            };
            cols[j] ^= cols[k];
        }
        if let Some(l) = low(cols[j]) {
            paired[l] = true;
            paired[j] = true;
            let (b, d) = (simplices[l].0, simplices[j].0);
            if b < d {
                out.push((simplices[l].1, b, d));
            }
        }
    }
    for (j, s) in simplices.iter().enumerate() {
        if !paired[j] && s.1 <= 1 {
            out.push((s.1, s.0, f64::INFINITY));
        }
    }
    out.sort_by(|x, y| {
        x.0.cmp(&y.0)
            .then(x.1.total_cmp(&y.1))
            .then(x.2.total_cmp(&y.2))
    });
    out
}

/// Tent of one interval at `t`.
pub fn tent(b: f64, d: f64, t: f64) -> f64 {
    (t - b).min(d - t).max(0.0)
}

/// `λ_k(t)` as the k-th largest tent value, by sorting.
pub fn kth_tent(bars: &[(f64, f64)], k: usize, t: f64) -> f64 {
    let mut v: Vec<f64> = bars.iter().map(|&(b, d)| tent(b, d, t)).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v.get(k - 1).copied().unwrap_or(0.0)
}

/// `∫ φ_a φ_b` for centred normal densities with sd `s` at distance `x`.
pub fn phi(x: f64, s: f64) -> f64 {
    (-0.5 * (x / s).powi(2)).exp() / (s * (2.0 * std::f64::consts::PI).sqrt())
}

/// Closed-form Gaussian-kernel CV score.
pub fn gaussian_cv_closed_form(data: &[f64], h: f64) -> f64 {
    let n = data.len() as f64;
    let (mut sq, mut loo) = (0.0, 0.0);
    for (i, a) in data.iter().enumerate() {
        for (j, b) in data.iter().enumerate() {
            sq += phi(a - b, h * 2f64.sqrt());
            if i != j {
                loo += phi(a - b, h);
            }
        }
    }
    sq / (n * n) - 2.0 / n * loo / (n - 1.0)
}

/// `∫ (f̂ − φ)²` for a Gaussian-kernel KDE against the standard normal.
pub fn gaussian_kde_ise(data: &[f64], h: f64) -> f64 {
    let n = data.len() as f64;
    let mut sq = 0.0;
    for a in data {
        for b in data {
            sq += phi(a - b, h * 2f64.sqrt());
        }
    }
    let cross: f64 = data.iter().map(|x| phi(*x, (1.0 + h * h).sqrt())).sum();
    sq / (n * n) - 2.0 * cross / n + 1.0 / (2.0 * std::f64::consts::PI.sqrt())
}

/// Standard normal CDF by composite Simpson on [−9, x].
pub fn std_normal_cdf(x: f64) -> f64 {
    if x < -9.0 {
        return 0.0;
    }
    let m = 4000;
    let (a, h) = (-9.0, (x + 9.0) / m as f64);
    let f = |t: f64| phi(t, 1.0);
    let mut s = f(a) + f(x);
    for i in 1..m {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `∫ (ĥ − φ)²` for a histogram given as `(lo, hi, height)` bins.
pub fn histogram_ise(bins: &[(f64, f64, f64)]) -> f64 {
    let mut total = 1.0 / (2.0 * std::f64::consts::PI.sqrt());
    for &(lo, hi, c) in bins {
        let mass = std_normal_cdf(hi) - std_normal_cdf(lo);
        total += c * c * (hi - lo) - 2.0 * c * mass;
    }
    total
}

/// Least-squares slope of `y` on `x`.
pub fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}
