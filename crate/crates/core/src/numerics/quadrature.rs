#![allow(clippy::excessive_precision)]

use crate::error::{domain, numeric, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub evaluations: usize,
}

const MAX_PANELS: usize = 4_000;

// 15-point Kronrod abscissae (non-negative half, descending) and weights.
const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// 7-point Gauss weights, paired with the odd-indexed Kronrod nodes.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: T,
}

fn kronrod_panel<T: Real, F: Fn(T) -> T>(g: &F, a: T, b: T) -> Result<Panel<T>> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let radius = half * (b - a);
    let mut kronrod = T::zero();
    let mut gauss = T::zero();
    for (j, (&node, &w)) in KRONROD_NODES.iter().zip(KRONROD_WEIGHTS.iter()).enumerate() {
        let dx = radius * T::lit(node);
        let fsum = if node == 0.0 {
            g(center)
        } else {
            g(center - dx) + g(center + dx)
        };
        if !fsum.is_finite() {
            return Err(numeric(format!("integrand not finite near {center}")));
        }
        kronrod = kronrod + T::lit(w) * fsum;
        if j % 2 == 1 {
            gauss = gauss + T::lit(GAUSS_WEIGHTS[j / 2]) * fsum;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * radius,
        err: ((kronrod - gauss) * radius).abs(),
    })
}

/// Adaptive Gauss–Kronrod (7/15) integration of `f` over `[lower, upper]`.
///
/// `upper` may be `T::infinity()`; the half-line is mapped onto `[0, 1)` by
/// `x = lower + t / (1 - t)`. Panels are bisected, largest error first, until
/// the summed error estimate is at most `tol`.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, lower: T, upper: T, tol: T) -> Result<QuadratureResult<T>> {
    if !(tol > T::zero()) {
        return Err(domain(format!("quadrature tolerance must be > 0, got {tol}")));
    }
    if !lower.is_finite() || upper.is_nan() || upper == T::neg_infinity() || upper < lower {
        return Err(domain(format!("invalid integration range [{lower}, {upper}]")));
    }
    if upper.is_infinite() {
        let mapped = |t: T| {
            let one_minus = T::one() - t;
            let x = lower + t / one_minus;
            let y = f(x);
            // the mapped integrand vanishes at t = 1 when f decays
            if y == T::zero() {
                T::zero()
            } else {
                y / (one_minus * one_minus)
            }
        };
        adaptive(&mapped, T::zero(), T::one(), tol)
    } else {
        adaptive(&f, lower, upper, tol)
    }
}

fn adaptive<T: Real, F: Fn(T) -> T>(g: &F, a: T, b: T, tol: T) -> Result<QuadratureResult<T>> {
    let mut panels = vec![kronrod_panel(g, a, b)?];
    let mut evaluations = 15;
    loop {
        let total_err: T = panels.iter().map(|p| p.err).sum();
        if total_err <= tol {
            return Ok(QuadratureResult {
                value: panels.iter().map(|p| p.value).sum(),
                abs_error_estimate: total_err,
                evaluations,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(numeric(format!(
                "quadrature did not reach tolerance {tol} (estimate {total_err}) within {evaluations} evaluations"
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).expect("finite error estimates"))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = T::lit(0.5) * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(numeric(format!("quadrature panel collapsed at {mid}")));
        }
        panels.push(kronrod_panel(g, p.a, mid)?);
        panels.push(kronrod_panel(g, mid, p.b)?);
        evaluations += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn linear_on_unit_interval() {
        let r = integrate(|x: f64| x, 0.0, 1.0, 1e-12).unwrap();
        assert_abs_diff_eq!(r.value, 0.5, epsilon = 1e-12);
        assert!(r.abs_error_estimate <= 1e-12);
        assert!(r.evaluations >= 15);
    }

    #[test]
    fn exponential_half_line() {
        let r = integrate(|x: f64| (-x).exp(), 0.0, f64::INFINITY, 1e-10).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn gaussian_half_line_with_offset() {
        let r = integrate(|x: f64| (-x * x).exp(), 1.0, f64::INFINITY, 1e-12).unwrap();
        // sqrt(pi)/2 * erfc(1)
        assert_abs_diff_eq!(r.value, 0.139_402_792_640_331_3, epsilon = 1e-12);
    }

    #[test]
    fn peaked_integrand_needs_subdivision() {
        let r = integrate(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-9).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert_abs_diff_eq!(r.value, exact, epsilon = 1e-9);
        assert!(r.evaluations > 15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(integrate(|x: f64| x, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(|x: f64| x, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate(|_: f64| f64::NAN, 0.0, 1.0, 1e-8).is_err());
    }

    #[test]
    fn nonconvergence_is_reported() {
        // oscillation too fast for the panel budget
        let r = integrate(|x: f64| (1e7 * x).sin().abs(), 0.0, 1.0, 1e-14);
        assert!(matches!(r, Err(crate::Error::Numeric(_))));
    }
}
