//! Monte Carlo checks of the samplers and estimators at fixed seeds.

use approx::assert_abs_diff_eq;
use nakagami_rmt::gof::KS_CRITICAL_1PCT;
use nakagami_rmt::{
    estimate_m_mle, estimate_m_moment, fit_report, ks_statistic, ks_test, Classification, NakagamiParams,
    RandomStream,
};
use statrs::distribution::{ContinuousCDF, Gamma};

fn critical(n: usize) -> f64 {
    KS_CRITICAL_1PCT / (n as f64).sqrt()
}

#[test]
fn gamma_shape_one_is_exponential() {
    let n = 100_000;
    let scale = 1.7;
    let mut s = RandomStream::new(12, 0);
    let xs: Vec<f64> = (0..n).map(|_| s.gamma(1.0, scale).unwrap()).collect();
    let d = ks_statistic(&xs, |x| 1.0 - (-x / scale).exp()).unwrap();
    assert!(d < critical(n), "D = {d}");
}

#[test]
fn gamma_small_shape_against_reference_cdf() {
    let n = 100_000;
    let mut s = RandomStream::new(13, 0);
    let xs: Vec<f64> = (0..n).map(|_| s.gamma(0.3, 2.0).unwrap()).collect();
    let reference = Gamma::new(0.3, 0.5).unwrap();
    let d = ks_statistic(&xs, |x| reference.cdf(x)).unwrap();
    assert!(d < critical(n), "D = {d}");
}

#[test]
fn nakagami_sampler_passes_ks() {
    let n = 100_000;
    for (m, seed) in [(1.5, 21u64), (0.5, 22), (2.5, 23)] {
        let p = NakagamiParams::new(m, 1.0).unwrap();
        let xs = p.sample(&mut RandomStream::new(seed, 0), n);
        let r = ks_test(&xs, |x| p.cdf(x)).unwrap();
        assert!(r.statistic <= critical(n), "m={m} D={}", r.statistic);
        assert!(r.passes_1pct());
    }
}

#[test]
fn moment_estimator_bands() {
    let n = 100_000;
    let xs = NakagamiParams::new(2.5, 1.0)
        .unwrap()
        .sample(&mut RandomStream::new(31, 0), n);
    let m = estimate_m_moment(&xs).unwrap();
    assert!((2.425..=2.575).contains(&m), "m = {m}");
    let xs = NakagamiParams::new(1.0, 1.0)
        .unwrap()
        .sample(&mut RandomStream::new(32, 0), n);
    let m = estimate_m_moment(&xs).unwrap();
    assert!((0.97..=1.03).contains(&m), "m = {m}");
}

#[test]
fn mle_half_normal_band() {
    let xs = NakagamiParams::new(0.5, 2.0)
        .unwrap()
        .sample(&mut RandomStream::new(33, 0), 100_000);
    let m = estimate_m_mle(&xs).unwrap();
    assert!((0.49..=0.51).contains(&m), "m = {m}");
}

#[test]
fn mle_on_quantile_grid() {
    // x = sqrt(y) with y at the (i − ½)/n quantiles of Gamma(3, 1)
    let n = 20_000;
    let g = Gamma::new(3.0, 1.0).unwrap();
    let xs: Vec<f64> = (1..=n)
        .map(|i| g.inverse_cdf((i as f64 - 0.5) / n as f64).sqrt())
        .collect();
    assert_abs_diff_eq!(estimate_m_mle(&xs).unwrap(), 3.0, epsilon = 1e-3);
}

#[test]
fn estimator_consistency() {
    let n = 100_000;
    for (i, m) in [0.5f64, 1.0, 1.5, 2.5, 5.0].into_iter().enumerate() {
        let xs = NakagamiParams::unit_mean(m)
            .unwrap()
            .sample(&mut RandomStream::new(40, i as u64), n);
        let mom = estimate_m_moment(&xs).unwrap();
        let mle = estimate_m_mle(&xs).unwrap();
        assert!((mom - m).abs() / m <= 0.03, "moment m={m} got {mom}");
        assert!((mle - m).abs() / m <= 0.02, "mle m={m} got {mle}");
    }
}

#[test]
fn large_m_is_unclassified() {
    let xs = NakagamiParams::<f64>::unit_mean(5.0)
        .unwrap()
        .sample(&mut RandomStream::new(50, 0), 100_000);
    let r = fit_report(&xs, 0.3f64).unwrap();
    assert_eq!(r.classification, Classification::Unclassified);
    assert!((r.beta_hat - 9.0).abs() < 0.3, "beta_hat = {}", r.beta_hat);
    assert!(r.ks.passes_1pct());
}

#[test]
fn fit_is_deterministic() {
    let draw = || {
        NakagamiParams::unit_mean(1.5)
            .unwrap()
            .sample(&mut RandomStream::new(51, 2), 5_000)
    };
    assert_eq!(
        fit_report(&draw(), 0.3).unwrap(),
        fit_report(&draw(), 0.3).unwrap()
    );
}
