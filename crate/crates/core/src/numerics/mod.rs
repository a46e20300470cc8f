//! Seeded random streams, special functions and adaptive quadrature.

mod quadrature;
mod rng;
mod special;

pub use quadrature::{integrate, QuadratureResult};
pub use rng::RandomStream;
pub use special::{digamma, ln_gamma, reg_gamma_p};
