use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::{ln_gamma, reg_gamma_p};
use crate::scalar::Real;

/// Generalized Wigner surmise `p(s) = a s^β exp(−b s²)`, normalized to unit
/// mass and unit mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerFamily<T> {
    beta: T,
    a_beta: T,
    b_beta: T,
}

impl<T: Real> WignerFamily<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !(beta >= T::zero()) || !beta.is_finite() {
            return Err(domain(format!("repulsion exponent must be >= 0, got {beta}")));
        }
        let two = T::lit(2.0);
        // log-space: the β = 4 prefactor raises Γ ratios to the 6th power
        let lg_hi = ln_gamma((beta + two) / two)?;
        let lg_lo = ln_gamma((beta + T::one()) / two)?;
        let ln_a = T::LN_2() + (beta + T::one()) * lg_hi - (beta + two) * lg_lo;
        let ln_b = two * (lg_hi - lg_lo);
        Ok(Self {
            beta,
            a_beta: ln_a.exp(),
            b_beta: ln_b.exp(),
        })
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn a_beta(&self) -> T {
        self.a_beta
    }

    pub fn b_beta(&self) -> T {
        self.b_beta
    }

    pub fn pdf(&self, s: T) -> T {
        if s < T::zero() || s.is_nan() {
            return T::zero();
        }
        if s == T::zero() {
            return if self.beta == T::zero() {
                self.a_beta
            } else {
                T::zero()
            };
        }
        (self.a_beta.ln() + self.beta * s.ln() - self.b_beta * s * s).exp()
    }

    /// Cumulative distribution, `P((β + 1)/2, b s²)`.
    pub fn cdf(&self, s: T) -> Result<T> {
        if !(s > T::zero()) {
            return Ok(T::zero());
        }
        reg_gamma_p((self.beta + T::one()) / T::lit(2.0), self.b_beta * s * s)
    }
}

/// Normalization constants `(a_β, b_β)`.
pub fn wigner_coefficients<T: Real>(beta: T) -> Result<(T, T)> {
    let w = WignerFamily::new(beta)?;
    Ok((w.a_beta, w.b_beta))
}

pub fn wigner_pdf<T: Real>(beta: T, s: T) -> Result<T> {
    Ok(WignerFamily::new(beta)?.pdf(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn ensemble_constants() {
        let (a, b) = wigner_coefficients(1.0).unwrap();
        assert_relative_eq!(a, PI / 2.0, max_relative = 1e-12);
        assert_relative_eq!(b, PI / 4.0, max_relative = 1e-12);
        let (a, b) = wigner_coefficients(2.0).unwrap();
        assert_relative_eq!(a, 32.0 / (PI * PI), max_relative = 1e-12);
        assert_relative_eq!(b, 4.0 / PI, max_relative = 1e-12);
        let (a, b) = wigner_coefficients(4.0).unwrap();
        assert_relative_eq!(
            a,
            2f64.powi(18) / (3f64.powi(6) * PI.powi(3)),
            max_relative = 1e-12
        );
        assert_relative_eq!(b, 64.0 / (9.0 * PI), max_relative = 1e-12);
        assert!(wigner_coefficients(-0.5).is_err());
    }

    #[test]
    fn pdf_points() {
        assert_abs_diff_eq!(
            wigner_pdf(1.0, 1.0).unwrap(),
            PI / 2.0 * (-PI / 4.0).exp(),
            epsilon = 1e-14
        );
        assert_eq!(wigner_pdf(3.0, 0.0).unwrap(), 0.0);
        assert_eq!(wigner_pdf(2.0, -1.0).unwrap(), 0.0);
        let poisson_like = WignerFamily::new(0.0).unwrap();
        assert_eq!(poisson_like.pdf(0.0), poisson_like.a_beta());
    }

    #[test]
    fn unit_mass_and_mean() {
        for beta in [0.0, 0.5, 1.0, 2.0, 2.3, 3.0, 4.0, 6.0] {
            let w = WignerFamily::new(beta).unwrap();
            let mass = integrate(|s| w.pdf(s), 0.0, f64::INFINITY, 1e-11).unwrap();
            let mean = integrate(|s| s * w.pdf(s), 0.0, f64::INFINITY, 1e-11).unwrap();
            assert_abs_diff_eq!(mass.value, 1.0, epsilon = 1e-8);
            assert_abs_diff_eq!(mean.value, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn cdf_matches_integrated_pdf() {
        for beta in [0.5, 1.0, 2.0, 4.0] {
            let w = WignerFamily::new(beta).unwrap();
            for s in [0.1, 0.5, 1.0, 1.7, 3.0] {
                let q = integrate(|t| w.pdf(t), 0.0, s, 1e-12).unwrap();
                assert_abs_diff_eq!(w.cdf(s).unwrap(), q.value, epsilon = 1e-10);
            }
        }
    }
}
