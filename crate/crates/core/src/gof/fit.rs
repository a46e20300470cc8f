use std::fmt;

use serde::{Serialize, Serializer};

use crate::distributions::{EnsembleKind, NakagamiParams};
use crate::error::{domain, numeric, Result};
use crate::gof::ks::{ks_test, KsReport};
use crate::numerics::digamma;
use crate::scalar::Real;

const MIN_SAMPLES: usize = 10;
const MLE_BRACKET: (f64, f64) = (0.25, 1e4);
const MLE_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Ensemble(EnsembleKind),
    Unclassified,
}

impl Classification {
    pub fn ensemble(self) -> Option<EnsembleKind> {
        match self {
            Classification::Ensemble(kind) => Some(kind),
            Classification::Unclassified => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Classification::Ensemble(kind) => kind.name(),
            Classification::Unclassified => "Unclassified",
        }
    }
}

impl From<EnsembleKind> for Classification {
    fn from(kind: EnsembleKind) -> Self {
        Classification::Ensemble(kind)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

fn check_samples<T: Real>(samples: &[T]) -> Result<()> {
    if samples.len() < MIN_SAMPLES {
        return Err(domain(format!(
            "need at least {MIN_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    if let Some(bad) = samples.iter().find(|x| !(**x > T::zero()) || !x.is_finite()) {
        return Err(domain(format!(
            "samples must be positive and finite, found {bad}"
        )));
    }
    Ok(())
}

fn squares_mean<T: Real>(samples: &[T]) -> T {
    samples.iter().map(|x| *x * *x).sum::<T>() / T::from_usize_lossy(samples.len())
}

/// Inverse normalized variance of `x²`: `m̂ = E[x²]² / Var[x²]`, population
/// variance.
pub fn estimate_m_moment<T: Real>(samples: &[T]) -> Result<T> {
    check_samples(samples)?;
    let n = T::from_usize_lossy(samples.len());
    let mean = squares_mean(samples);
    let var = samples
        .iter()
        .map(|x| {
            let dev = *x * *x - mean;
            dev * dev
        })
        .sum::<T>()
        / n;
    if !(var > T::zero()) {
        return Err(numeric("squared samples have zero variance"));
    }
    Ok(mean * mean / var)
}

/// Gamma-shape maximum likelihood on `y = x²`.
///
/// Solves `ln m − ψ(m) = ln E[y] − E[ln y]` by bisection over
/// `m ∈ [0.25, 10⁴]` down to a bracket of width `1e−10`.
pub fn estimate_m_mle<T: Real>(samples: &[T]) -> Result<T> {
    check_samples(samples)?;
    let n = T::from_usize_lossy(samples.len());
    let mean_y = squares_mean(samples);
    let mean_ln_y = samples.iter().map(|x| T::lit(2.0) * x.ln()).sum::<T>() / n;
    let rhs = mean_y.ln() - mean_ln_y;
    if !(rhs > T::zero()) {
        return Err(numeric(format!(
            "log-mean minus mean-log of squared samples must be positive, got {rhs}"
        )));
    }
    let score = |m: T| -> Result<T> { Ok(m.ln() - digamma(m)? - rhs) };
    let (mut lo, mut hi) = (T::lit(MLE_BRACKET.0), T::lit(MLE_BRACKET.1));
    let (g_lo, g_hi) = (score(lo)?, score(hi)?);
    if !(g_lo > T::zero() && g_hi < T::zero()) {
        return Err(numeric(format!(
            "shape equation has no root in [{lo}, {hi}] (score {g_lo} .. {g_hi})"
        )));
    }
    let width = T::lit(MLE_WIDTH);
    while hi - lo > width {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if score(mid)? > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// Nearest ensemble on the β axis (β̂ = 2m̂ − 1), if within `tol_beta`.
///
/// Exact midpoints go to the smaller β.
pub fn classify_ensemble<T: Real>(m_hat: T, tol_beta: T) -> Classification {
    let beta_hat = T::lit(2.0) * m_hat - T::one();
    let mut best: Option<(EnsembleKind, T)> = None;
    for kind in EnsembleKind::ALL {
        let dist = (beta_hat - kind.beta_as::<T>()).abs();
        match best {
            Some((_, d)) if dist >= d => {}
            _ => best = Some((kind, dist)),
        }
    }
    match best {
        Some((kind, dist)) if dist <= tol_beta => Classification::Ensemble(kind),
        _ => Classification::Unclassified,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport<T> {
    pub m_hat_moment: T,
    pub m_hat_mle: T,
    /// `2 · m_hat_mle − 1`.
    pub beta_hat: T,
    /// Second-moment spread estimate used for the KS reference.
    pub omega_hat: T,
    pub ks: KsReport<T>,
    pub classification: Classification,
}

/// Both estimators, β̂ from the MLE, KS against the fitted Nakagami law, and
/// the ensemble classification.
pub fn fit_report<T: Real>(samples: &[T], tol_beta: T) -> Result<FitReport<T>> {
    if !(tol_beta > T::zero()) {
        return Err(domain(format!("tol_beta must be > 0, got {tol_beta}")));
    }
    let m_hat_moment = estimate_m_moment(samples)?;
    let m_hat_mle = estimate_m_mle(samples)?;
    let beta_hat = T::lit(2.0) * m_hat_mle - T::one();
    let omega_hat = squares_mean(samples);
    // the MLE bracket reaches below 0.5, where the Nakagami law is undefined
    let reference = NakagamiParams::new(m_hat_mle.max(T::lit(0.5)), omega_hat)?;
    let ks = ks_test(samples, |x| reference.cdf(x))?;
    Ok(FitReport {
        m_hat_moment,
        m_hat_mle,
        beta_hat,
        omega_hat,
        ks,
        classification: classify_ensemble(m_hat_mle, tol_beta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::m_from_beta;

    #[test]
    fn classification_examples() {
        assert_eq!(classify_ensemble(1.02, 0.15), EnsembleKind::Goe.into());
        assert_eq!(classify_ensemble(3.0, 0.3), Classification::Unclassified);
        assert_eq!(classify_ensemble(2.45, 0.3), EnsembleKind::Gse.into());
    }

    #[test]
    fn classification_ties_go_low() {
        // β̂ = 1.5 sits between GOE and GUE; β̂ = 3 between GUE and GSE
        assert_eq!(classify_ensemble(1.25, 0.5), EnsembleKind::Goe.into());
        assert_eq!(classify_ensemble(2.0, 1.0), EnsembleKind::Gue.into());
        assert_eq!(classify_ensemble(2.0, 0.99), Classification::Unclassified);
    }

    #[test]
    fn classification_round_trip() {
        for kind in EnsembleKind::ALL {
            let m = m_from_beta(f64::from(kind.beta())).unwrap();
            for tol in [1e-9, 0.1, 0.3, 2.0] {
                assert_eq!(classify_ensemble(m, tol), kind.into());
            }
        }
    }

    #[test]
    fn estimator_preconditions() {
        let few = [1.0; 5];
        assert!(matches!(estimate_m_moment(&few), Err(crate::Error::Domain(_))));
        let constant = [1.3; 20];
        assert!(matches!(
            estimate_m_moment(&constant),
            Err(crate::Error::Numeric(_))
        ));
        assert!(matches!(estimate_m_mle(&constant), Err(crate::Error::Numeric(_))));
        let mut with_zero = vec![1.0, 2.0, 0.5, 0.7, 1.1, 0.9, 1.4, 0.3, 2.2, 1.0];
        with_zero[3] = 0.0;
        assert!(matches!(estimate_m_mle(&with_zero), Err(crate::Error::Domain(_))));
        with_zero[3] = -1.0;
        assert!(matches!(estimate_m_mle(&with_zero), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn fit_report_beta_identity() {
        let data: Vec<f64> = (1..=200)
            .map(|i| 0.2 + (i as f64 * 0.731).sin().abs() * 2.0)
            .collect();
        let r = fit_report(&data, 0.3).unwrap();
        assert_eq!(r.beta_hat, 2.0 * r.m_hat_mle - 1.0);
        assert!(fit_report(&data, 0.0).is_err());
    }
}
