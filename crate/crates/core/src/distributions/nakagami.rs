use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::{ln_gamma, reg_gamma_p, RandomStream};
use crate::scalar::Real;

/// Shape `m` (fading figure) and spread `omega` of a Nakagami-m envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NakagamiParams<T> {
    m: T,
    omega: T,
}

impl<T: Real> NakagamiParams<T> {
    /// Requires `m >= 0.5` and `omega > 0`.
    pub fn new(m: T, omega: T) -> Result<Self> {
        if !(m >= T::lit(0.5)) || !m.is_finite() {
            return Err(domain(format!("fading figure m must be >= 0.5, got {m}")));
        }
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(domain(format!("spread omega must be > 0, got {omega}")));
        }
        Ok(Self { m, omega })
    }

    /// Parameters with Ω chosen so the envelope has unit mean.
    pub fn unit_mean(m: T) -> Result<Self> {
        Self::new(m, crate::distributions::omega_unit(m)?)
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// Density `2 m^m / (Γ(m) Ω^m) x^(2m−1) exp(−m x² / Ω)`.
    ///
    /// Zero for negative `x`; at the origin the continuous limit, which is
    /// nonzero only for the half-normal case `m = 0.5`.
    pub fn pdf(&self, x: T) -> T {
        let (m, omega) = (self.m, self.omega);
        if x < T::zero() || x.is_nan() {
            return T::zero();
        }
        if x == T::zero() {
            return if m == T::lit(0.5) {
                (T::lit(2.0) / (T::PI() * omega)).sqrt()
            } else {
                T::zero()
            };
        }
        let ln_norm = T::LN_2() + m * (m / omega).ln() - ln_gamma(m).expect("m >= 0.5");
        (ln_norm + (T::lit(2.0) * m - T::one()) * x.ln() - m * x * x / omega).exp()
    }

    /// `F(x) = P(m, m x² / Ω)`.
    pub fn cdf(&self, x: T) -> Result<T> {
        if !(x > T::zero()) {
            return Ok(T::zero());
        }
        reg_gamma_p(self.m, self.m * x * x / self.omega)
    }

    /// `Γ(m + ½) / Γ(m) · √(Ω / m)`.
    pub fn mean(&self) -> T {
        let m = self.m;
        let ln_ratio = ln_gamma(m + T::lit(0.5)).expect("m >= 0.5") - ln_gamma(m).expect("m >= 0.5");
        ln_ratio.exp() * (self.omega / m).sqrt()
    }

    /// One envelope draw: the square root of a Gamma(m, Ω/m) variate.
    pub fn sample_one(&self, stream: &mut RandomStream) -> T {
        stream
            .gamma(self.m, self.omega / self.m)
            .expect("validated parameters are a valid gamma law")
            .sqrt()
    }

    /// `n` independent envelope draws.
    pub fn sample(&self, stream: &mut RandomStream, n: usize) -> Vec<T> {
        (0..n).map(|_| self.sample_one(stream)).collect()
    }
}
