use plstat_core::density::{
    estimate_density_derivative, kde, kde_interval, normal_reference_bandwidth, select_bandwidth,
    uniform_grid, Kernel,
};
use plstat_core::RngStream;
use rand_distr::{Distribution, StandardNormal};

fn normal_sample(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 0).rng();
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

#[test]
fn cv_bandwidth_near_reference_and_curve_unimodal() {
    let data = normal_sample(500, 0);
    let sel = select_bandwidth(&data, Kernel::Gaussian, 0.05, 1.0, 0.01).unwrap();
    assert!(
        sel.h_cv > 0.3057 / 2.0 && sel.h_cv < 0.3057 * 2.0,
        "h_cv = {}",
        sel.h_cv
    );
    // One local minimum: decreasing then nondecreasing, plateaus allowed.
    let best = sel.h_grid.iter().position(|&h| h == sel.h_cv).unwrap();
    assert!(sel.scores[..=best].windows(2).all(|w| w[1] <= w[0]));
    assert!(sel.scores[best..].windows(2).all(|w| w[1] >= w[0]));
    // Extremes lose to the selected bandwidth.
    let wide = select_bandwidth(&data, Kernel::Gaussian, 20.0, 21.0, 1.0).unwrap();
    assert!(wide.j_min > sel.j_min);
}

#[test]
fn slope_integral_within_thirty_percent() {
    let data = normal_sample(2000, 5);
    let h = normal_reference_bandwidth(&data, Kernel::Gaussian).unwrap();
    let mut sorted = data.clone();
    sorted.sort_by(f64::total_cmp);
    let f_hat = kde(&data, h, Kernel::Gaussian, &sorted).unwrap();
    let d = estimate_density_derivative(&data, h, &f_hat).unwrap();
    let truth = 1.0 / (4.0 * std::f64::consts::PI.sqrt());
    let rel = (d.int_fprime_sq - truth).abs() / truth;
    println!(
        "slope integral {} (riemann {}) vs {truth}",
        d.int_fprime_sq, d.riemann_fprime_sq
    );
    assert!(rel < 0.3, "relative error {rel}");
}

#[test]
fn quantile_interval_of_normal_density() {
    let data = normal_sample(5000, 3);
    let h = normal_reference_bandwidth(&data, Kernel::Gaussian).unwrap();
    let est = kde(&data, h, Kernel::Gaussian, &uniform_grid(-8.0, 8.0, 8001)).unwrap();
    let ci = kde_interval(&est, 0.05).unwrap();
    assert!((ci.lower + 1.959964).abs() < 0.1, "{ci:?}");
    assert!((ci.upper - 1.959964).abs() < 0.1, "{ci:?}");
}
