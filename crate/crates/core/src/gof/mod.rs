//! Histograms, Kolmogorov–Smirnov statistics, fading-figure estimation and
//! ensemble classification.

mod fit;
mod histogram;
mod ks;

pub use fit::{classify_ensemble, estimate_m_mle, estimate_m_moment, fit_report, Classification, FitReport};
pub use histogram::{histogram, Histogram};
pub use ks::{ks_pvalue, ks_statistic, ks_test, try_ks_statistic, KsReport, KS_CRITICAL_1PCT};
