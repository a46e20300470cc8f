//! Gaussian-ensemble sampling, Hermitian eigenvalues, spectral unfolding and
//! nearest-neighbor spacing series.

mod eigen;
mod lstsq;
mod matrix;
mod spacing;

pub use eigen::eigenvalues_hermitian;
pub use matrix::{kramers_deduplicate, sample_matrix, GaussianMatrixSample, HermitianMatrix, SpectralData};
pub use spacing::{
    bulk_spacings, pool_spacings, sample_spectra, spacings_2x2, unfold, Provenance, SpacingSeries,
    DEFAULT_UNFOLD_DEGREE, DEFAULT_UNFOLD_TRIM,
};
