use serde::Serialize;

use crate::error::{domain, Result};
use crate::scalar::Real;

/// Density-normalized histogram with uniform bins.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram<T> {
    pub bin_edges: Vec<T>,
    pub densities: Vec<T>,
    /// Number of data points inside the range.
    pub sample_count: usize,
}

impl<T: Real> Histogram<T> {
    pub fn bins(&self) -> usize {
        self.densities.len()
    }

    pub fn bin_center(&self, i: usize) -> T {
        (self.bin_edges[i] + self.bin_edges[i + 1]) * T::lit(0.5)
    }

    pub fn bin_width(&self, i: usize) -> T {
        self.bin_edges[i + 1] - self.bin_edges[i]
    }

    /// Σ densityᵢ · widthᵢ; one whenever any data was retained.
    pub fn mass(&self) -> T {
        (0..self.bins())
            .map(|i| self.densities[i] * self.bin_width(i))
            .sum()
    }
}

/// Bins `data` over `range` (default: data min to max).
///
/// Values outside the range are dropped rather than clamped; the upper edge
/// belongs to the last bin.
pub fn histogram<T: Real>(data: &[T], bins: usize, range: Option<(T, T)>) -> Result<Histogram<T>> {
    if data.is_empty() {
        return Err(domain("histogram of empty data"));
    }
    if bins == 0 {
        return Err(domain("histogram needs at least one bin"));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(domain("histogram data must be finite"));
    }
    let (lo, hi) = match range {
        Some((lo, hi)) => {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(domain(format!(
                    "histogram range must satisfy lo < hi, got ({lo}, {hi})"
                )));
            }
            (lo, hi)
        }
        None => {
            let lo = data.iter().copied().fold(T::infinity(), T::min);
            let hi = data.iter().copied().fold(T::neg_infinity(), T::max);
            if lo < hi {
                (lo, hi)
            } else {
                (lo - T::lit(0.5), hi + T::lit(0.5))
            }
        }
    };
    let nb = T::from_usize_lossy(bins);
    let width = (hi - lo) / nb;
    let bin_edges: Vec<T> = (0..=bins)
        .map(|i| {
            if i == bins {
                hi
            } else {
                lo + width * T::from_usize_lossy(i)
            }
        })
        .collect();

    let mut counts = vec![0usize; bins];
    for &x in data {
        if x < lo || x > hi {
            continue;
        }
        let idx = ((x - lo) / width).floor().to_usize().unwrap_or(0).min(bins - 1);
        counts[idx] += 1;
    }
    let sample_count: usize = counts.iter().sum();
    let densities = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if sample_count == 0 {
                T::zero()
            } else {
                T::from_usize_lossy(c)
                    / (T::from_usize_lossy(sample_count) * (bin_edges[i + 1] - bin_edges[i]))
            }
        })
        .collect();
    Ok(Histogram {
        bin_edges,
        densities,
        sample_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn single_point() {
        let h = histogram(&[0.5], 1, Some((0.0, 1.0))).unwrap();
        assert_eq!(h.densities, vec![1.0]);
        assert_eq!(h.sample_count, 1);
    }

    #[test]
    fn uniform_grid() {
        let data: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let h = histogram(&data, 10, Some((0.0, 1.0))).unwrap();
        for d in &h.densities {
            assert_abs_diff_eq!(*d, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn drops_out_of_range() {
        let h = histogram(&[-1.0, 0.2, 0.7, 1.0, 3.0], 2, Some((0.0, 1.0))).unwrap();
        assert_eq!(h.sample_count, 3);
        assert_abs_diff_eq!(h.mass(), 1.0, epsilon = 1e-12);
        let none = histogram(&[5.0], 4, Some((0.0, 1.0))).unwrap();
        assert_eq!(none.sample_count, 0);
        assert!(none.densities.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn errors() {
        assert!(histogram::<f64>(&[], 3, None).is_err());
        assert!(histogram(&[1.0], 0, None).is_err());
        assert!(histogram(&[1.0], 3, Some((1.0, 1.0))).is_err());
        assert!(histogram(&[f64::NAN], 3, None).is_err());
    }

    #[test]
    fn constant_data_without_range() {
        let h = histogram(&[2.0, 2.0, 2.0], 4, None).unwrap();
        assert_eq!(h.sample_count, 3);
        assert_abs_diff_eq!(h.mass(), 1.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn unit_mass(data in prop::collection::vec(-50.0f64..50.0, 1..400), bins in 1usize..64) {
            let h = histogram(&data, bins, None).unwrap();
            prop_assert_eq!(h.sample_count, data.len());
            prop_assert!((h.mass() - 1.0).abs() <= 1e-12);
            let h = histogram(&data, bins, Some((-10.0, 10.0))).unwrap();
            if h.sample_count > 0 {
                prop_assert!((h.mass() - 1.0).abs() <= 1e-12);
            }
        }
    }
}
