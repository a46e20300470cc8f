//! Nakagami-m fading, the generalized Wigner surmise, and the shape mapping
//! that links them.

mod ensemble;
mod mapping;
mod nakagami;
mod wigner;

pub use ensemble::EnsembleKind;
pub use mapping::{beta_from_m, m_from_beta, omega_unit};
pub use nakagami::NakagamiParams;
pub use wigner::{wigner_coefficients, wigner_pdf, WignerFamily};
