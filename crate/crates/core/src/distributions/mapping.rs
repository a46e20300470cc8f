use crate::error::{domain, Result};
use crate::numerics::ln_gamma;
use crate::scalar::Real;

/// Repulsion exponent matching fading figure `m`: β = 2m − 1.
pub fn beta_from_m<T: Real>(m: T) -> Result<T> {
    if !(m >= T::lit(0.5)) || !m.is_finite() {
        return Err(domain(format!("fading figure m must be >= 0.5, got {m}")));
    }
    Ok(T::lit(2.0) * m - T::one())
}

/// Fading figure matching repulsion exponent `beta`: m = (β + 1) / 2.
pub fn m_from_beta<T: Real>(beta: T) -> Result<T> {
    if !(beta >= T::zero()) || !beta.is_finite() {
        return Err(domain(format!("repulsion exponent must be >= 0, got {beta}")));
    }
    Ok((beta + T::one()) / T::lit(2.0))
}

/// Spread Ω that gives a Nakagami-m envelope unit mean:
/// Ω = m Γ(m)² / Γ(m + ½)².
pub fn omega_unit<T: Real>(m: T) -> Result<T> {
    if !(m >= T::lit(0.5)) || !m.is_finite() {
        return Err(domain(format!("fading figure m must be >= 0.5, got {m}")));
    }
    let two = T::lit(2.0);
    let ln_omega = m.ln() + two * ln_gamma(m)? - two * ln_gamma(m + T::lit(0.5))?;
    Ok(ln_omega.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn shape_mapping() {
        assert_eq!(beta_from_m(1.0).unwrap(), 1.0);
        assert_eq!(beta_from_m(1.5).unwrap(), 2.0);
        assert_eq!(m_from_beta(4.0).unwrap(), 2.5);
        assert!(beta_from_m(0.49).is_err());
        assert!(m_from_beta(-0.1).is_err());
        for i in 0..100 {
            let m = 0.5 + 0.173 * i as f64;
            assert_abs_diff_eq!(m_from_beta(beta_from_m(m).unwrap()).unwrap(), m, epsilon = 1e-14);
        }
    }

    #[test]
    fn unit_mean_spreads() {
        assert_abs_diff_eq!(omega_unit(1.5).unwrap(), 3.0 * PI / 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(omega_unit(1.0).unwrap(), 4.0 / PI, epsilon = 1e-12);
        assert_abs_diff_eq!(omega_unit(2.5).unwrap(), 45.0 * PI / 128.0, epsilon = 1e-12);
        assert_abs_diff_eq!(omega_unit(0.5).unwrap(), PI / 2.0, epsilon = 1e-12);
        assert!(omega_unit(0.3).is_err());
    }
}
