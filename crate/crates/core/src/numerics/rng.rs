use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Deterministic random source addressed by `(seed, stream_index)`.
///
/// Equal addresses replay identical draw sequences. Distinct stream indices
/// under one seed select independent ChaCha streams. Parallel work obtains
/// its own stream through [`RandomStream::split`] and must combine results in
/// child-index order.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    stream_index: u64,
    rng: ChaCha20Rng,
    spare_normal: Option<f64>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream_index);
        Self {
            seed,
            stream_index,
            rng,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Child stream number `k` of this stream's address.
    ///
    /// The child depends only on `(seed, stream_index, k)`, never on how far
    /// the parent has been advanced.
    pub fn split(&self, k: u64) -> Self {
        let child_seed = splitmix64(self.seed ^ splitmix64(self.stream_index.wrapping_add(1)));
        Self::new(child_seed, k)
    }

    /// Uniform variate on the open interval (0, 1).
    pub fn uniform_open(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// One N(0, 1) variate by the polar rejection method.
    pub fn standard_normal<T: Real>(&mut self) -> T {
        T::lit(self.standard_normal_f64())
    }

    fn standard_normal_f64(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.random::<f64>() - 1.0;
            let v = 2.0 * self.rng.random::<f64>() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * factor);
                return u * factor;
            }
        }
    }

    /// One Gamma(shape, scale) variate.
    ///
    /// Uses the Marsaglia–Tsang squeeze method for `shape >= 1` and the
    /// boost `G(shape + 1) * U^(1/shape)` below that.
    pub fn gamma<T: Real>(&mut self, shape: T, scale: T) -> Result<T> {
        let (k, theta) = (shape.to_f64_lossy(), scale.to_f64_lossy());
        if !(k >= 0.25) || !k.is_finite() {
            return Err(domain(format!("gamma shape must be >= 0.25, got {k}")));
        }
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(domain(format!("gamma scale must be > 0, got {theta}")));
        }
        Ok(T::lit(self.gamma_unit_f64(k) * theta))
    }

    fn gamma_unit_f64(&mut self, shape: f64) -> f64 {
        if shape < 1.0 {
            let g = self.gamma_unit_f64(shape + 1.0);
            let u = self.uniform_open();
            return g * u.powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let (x, v) = loop {
                let x = self.standard_normal_f64();
                let v = 1.0 + c * x;
                if v > 0.0 {
                    break (x, v * v * v);
                }
            };
            let u = self.uniform_open();
            let x2 = x * x;
            // squeeze
            if u < 1.0 - 0.0331 * x2 * x2 {
                return d * v;
            }
            if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }
}
