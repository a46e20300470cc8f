//! Nakagami-m fading envelopes and the nearest-neighbor level-spacing
//! statistics of the Gaussian random-matrix ensembles.
//!
//! With β = 2m − 1 and the spread chosen for unit mean, the Nakagami-m
//! density coincides with the generalized Wigner surmise. The crate provides
//! both sides of that correspondence, samplers for the GOE/GUE/GSE, spectral
//! unfolding, goodness-of-fit machinery, and the distance-driven fading
//! scenario.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases at the crate root fix the scalar to `f64`.

// `!(x > 0)` style guards deliberately reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
pub mod error;
pub mod gof;
pub mod numerics;
pub mod rmt;
pub mod scalar;
pub mod scenario;

pub use distributions::{
    beta_from_m, m_from_beta, omega_unit, wigner_coefficients, wigner_pdf, EnsembleKind, NakagamiParams,
    WignerFamily,
};
pub use error::{Error, Result};
pub use gof::{
    classify_ensemble, estimate_m_mle, estimate_m_moment, fit_report, histogram, ks_pvalue, ks_statistic,
    ks_test, Classification, FitReport, Histogram, KsReport,
};
pub use numerics::{digamma, integrate, ln_gamma, reg_gamma_p, QuadratureResult, RandomStream};
pub use rmt::{
    bulk_spacings, eigenvalues_hermitian, pool_spacings, sample_matrix, spacings_2x2, unfold,
    GaussianMatrixSample, HermitianMatrix, Provenance, SpacingSeries, SpectralData,
};
pub use scalar::Real;
pub use scenario::{run_transition_scenario, run_window, DistanceProfile, ProfileSegment, WindowResult};

pub type NakagamiParams64 = NakagamiParams<f64>;
pub type NakagamiParams32 = NakagamiParams<f32>;
pub type WignerFamily64 = WignerFamily<f64>;
pub type WignerFamily32 = WignerFamily<f32>;
pub type SpacingSeries64 = SpacingSeries<f64>;
pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type FitReport64 = FitReport<f64>;
pub type Histogram64 = Histogram<f64>;
pub type DistanceProfile64 = DistanceProfile<f64>;
pub type WindowResult64 = WindowResult<f64>;
