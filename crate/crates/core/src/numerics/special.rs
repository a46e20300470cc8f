use crate::error::{domain, numeric, Result};
use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin()).ln() - ln_gamma_unchecked(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_usize_lossy(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (x + half) * t.ln() - t + acc.ln()
}

/// Digamma ψ(x) = d/dx ln Γ(x) for `x > 0`.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(domain(format!("digamma requires x > 0, got {x}")));
    }
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked<T: Real>(mut x: T) -> T {
    let mut shift = T::zero();
    let ten = T::lit(10.0);
    while x < ten {
        shift = shift + x.recip();
        x = x + T::one();
    }
    let inv2 = (x * x).recip();
    // Bernoulli tail: 1/12, 1/120, 1/252, 1/240, 1/132
    let tail = inv2
        * (T::lit(1.0 / 12.0)
            - inv2
                * (T::lit(1.0 / 120.0)
                    - inv2
                        * (T::lit(1.0 / 252.0) - inv2 * (T::lit(1.0 / 240.0) - inv2 * T::lit(1.0 / 132.0)))));
    x.ln() - T::lit(0.5) / x - tail - shift
}

const MAX_ITER: usize = 10_000;

/// Regularized lower incomplete gamma function P(a, x).
pub fn reg_gamma_p<T: Real>(a: T, x: T) -> Result<T> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(domain(format!("reg_gamma_p requires a > 0, got {a}")));
    }
    if !(x >= T::zero()) {
        return Err(domain(format!("reg_gamma_p requires x >= 0, got {x}")));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    if x.is_infinite() {
        return Ok(T::one());
    }
    let p = if x < a + T::one() {
        lower_series(a, x)?
    } else {
        T::one() - upper_continued_fraction(a, x)?
    };
    Ok(p.max(T::zero()).min(T::one()))
}

fn log_prefactor<T: Real>(a: T, x: T) -> T {
    a * x.ln() - x - ln_gamma_unchecked(a)
}

fn lower_series<T: Real>(a: T, x: T) -> Result<T> {
    let eps = T::epsilon();
    let mut ap = a;
    let mut term = a.recip();
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap = ap + T::one();
        term = term * x / ap;
        sum = sum + term;
        if term.abs() < sum.abs() * eps {
            return Ok(sum * log_prefactor(a, x).exp());
        }
    }
    Err(numeric(format!(
        "reg_gamma_p series did not converge (a={a}, x={x})"
    )))
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
fn upper_continued_fraction<T: Real>(a: T, x: T) -> Result<T> {
    let eps = T::epsilon();
    let tiny = T::min_positive_value() / eps;
    let mut b = x + T::one() - a;
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..=MAX_ITER {
        let i = T::from_usize_lossy(i);
        let an = -i * (i - a);
        b = b + T::lit(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = d * c;
        h = h * delta;
        if (delta - T::one()).abs() < eps {
            return Ok(h * log_prefactor(a, x).exp());
        }
    }
    Err(numeric(format!(
        "reg_gamma_p continued fraction did not converge (a={a}, x={x})"
    )))
}
