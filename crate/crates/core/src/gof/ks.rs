use serde::Serialize;

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Asymptotic one-sample KS critical coefficient at α = 0.01: reject when
/// `D > 1.63 / √n`.
pub const KS_CRITICAL_1PCT: f64 = 1.63;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsReport<T> {
    pub statistic: T,
    pub n: usize,
    pub p_value: T,
}

impl<T: Real> KsReport<T> {
    /// Whether `statistic` is below the asymptotic α = 0.01 critical value.
    pub fn passes_1pct(&self) -> bool {
        self.statistic < T::lit(KS_CRITICAL_1PCT) / T::from_usize_lossy(self.n).sqrt()
    }
}

/// One-sample KS distance between `data` and a reference CDF.
pub fn ks_statistic<T: Real>(data: &[T], cdf: impl Fn(T) -> T) -> Result<T> {
    try_ks_statistic(data, |x| Ok(cdf(x)))
}

/// [`ks_statistic`] for a CDF that can fail.
pub fn try_ks_statistic<T: Real>(data: &[T], cdf: impl Fn(T) -> Result<T>) -> Result<T> {
    if data.is_empty() {
        return Err(domain("KS statistic of empty data"));
    }
    if data.iter().any(|x| x.is_nan()) {
        return Err(domain("KS data contains NaN"));
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let n = T::from_usize_lossy(sorted.len());
    let mut d = T::zero();
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x)?;
        let above = T::from_usize_lossy(i + 1) / n - f;
        let below = f - T::from_usize_lossy(i) / n;
        d = d.max(above).max(below);
    }
    Ok(d)
}

/// Asymptotic Kolmogorov tail probability `Q(√n · D)`.
pub fn ks_pvalue<T: Real>(statistic: T, n: usize) -> T {
    let lambda = T::from_usize_lossy(n.max(1)).sqrt() * statistic.max(T::zero());
    kolmogorov_q(lambda).max(T::zero()).min(T::one())
}

fn kolmogorov_q<T: Real>(lambda: T) -> T {
    let cutoff = T::lit(1e-12);
    if lambda <= T::zero() {
        return T::one();
    }
    if lambda < T::lit(1.18) {
        // Jacobi-transformed form; the alternating series converges slowly here
        let pi2_8 = T::PI() * T::PI() / T::lit(8.0);
        let inv = (lambda * lambda).recip();
        let mut sum = T::zero();
        for k in 1..=100usize {
            let odd = T::from_usize_lossy(2 * k - 1);
            let term = (-odd * odd * pi2_8 * inv).exp();
            sum = sum + term;
            if term < cutoff {
                break;
            }
        }
        return T::one() - (T::lit(2.0) * T::PI()).sqrt() / lambda * sum;
    }
    let mut sum = T::zero();
    let mut sign = T::one();
    for k in 1..=100usize {
        let kf = T::from_usize_lossy(k);
        let term = (T::lit(-2.0) * kf * kf * lambda * lambda).exp();
        sum = sum + sign * term;
        if term < cutoff {
            break;
        }
        sign = -sign;
    }
    T::lit(2.0) * sum
}

/// KS statistic and asymptotic p-value in one report.
pub fn ks_test<T: Real>(data: &[T], cdf: impl Fn(T) -> Result<T>) -> Result<KsReport<T>> {
    let statistic = try_ks_statistic(data, cdf)?;
    Ok(KsReport {
        statistic,
        n: data.len(),
        p_value: ks_pvalue(statistic, data.len()),
    })
}
