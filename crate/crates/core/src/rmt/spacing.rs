use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::EnsembleKind;
use crate::error::{domain, numeric, Result};
use crate::numerics::RandomStream;
use crate::rmt::lstsq::least_squares;
use crate::rmt::matrix::{sample_matrix, SpectralData};
use crate::scalar::Real;

pub const DEFAULT_UNFOLD_DEGREE: usize = 7;
pub const DEFAULT_UNFOLD_TRIM: f64 = 0.1;

/// Minimal-size members per parallel chunk in [`spacings_2x2`].
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Gaps of independent 2×2 (GSE: 2×2 quaternion) members.
    TwoByTwoExact,
    /// Bulk spacings of unfolded large spectra.
    UnfoldedBulk,
}

/// Nearest-neighbor spacings normalized to unit empirical mean.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingSeries<T> {
    spacings: Vec<T>,
    provenance: Provenance,
}

impl<T: Real> SpacingSeries<T> {
    /// Divides raw gaps by their empirical mean.
    pub fn normalized(raw: Vec<T>, provenance: Provenance) -> Result<Self> {
        if raw.is_empty() {
            return Err(domain("spacing series must be nonempty"));
        }
        if raw.iter().any(|s| !(*s >= T::zero()) || !s.is_finite()) {
            return Err(numeric("spacings must be finite and nonnegative"));
        }
        let mean = raw.iter().copied().sum::<T>() / T::from_usize_lossy(raw.len());
        if !(mean > T::zero()) {
            return Err(numeric("spacings have zero mean"));
        }
        Ok(Self {
            spacings: raw.into_iter().map(|s| s / mean).collect(),
            provenance,
        })
    }

    pub fn spacings(&self) -> &[T] {
        &self.spacings
    }

    pub fn into_spacings(self) -> Vec<T> {
        self.spacings
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.spacings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spacings.is_empty()
    }

    pub fn mean(&self) -> T {
        self.spacings.iter().copied().sum::<T>() / T::from_usize_lossy(self.spacings.len())
    }
}

/// Gaps of `count` independent minimal-size members of `kind`.
///
/// Chunk `j` of the work draws from `stream.split(j)`, so the result does not
/// depend on the number of worker threads.
pub fn spacings_2x2<T: Real>(
    stream: &RandomStream,
    kind: EnsembleKind,
    count: usize,
) -> Result<SpacingSeries<T>> {
    if count < 2 {
        return Err(domain(format!("need at least 2 spacings, got {count}")));
    }
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|j| {
            let mut sub = stream.split(j as u64);
            let len = CHUNK.min(count - j * CHUNK);
            (0..len)
                .map(|_| {
                    let levels = sample_matrix::<T>(&mut sub, kind, 2)?.spectrum()?.eigenvalues;
                    Ok(levels[1] - levels[0])
                })
                .collect::<Result<Vec<T>>>()
        })
        .collect::<Result<_>>()?;
    SpacingSeries::normalized(parts.concat(), Provenance::TwoByTwoExact)
}

fn chebyshev_row<T: Real>(t: T, degree: usize) -> Vec<T> {
    let mut row = Vec::with_capacity(degree + 1);
    row.push(T::one());
    if degree >= 1 {
        row.push(t);
    }
    for k in 2..=degree {
        let next = T::lit(2.0) * t * row[k - 1] - row[k - 2];
        row.push(next);
    }
    row
}

/// Unfolds an ascending spectrum by a polynomial fit to its staircase.
///
/// A degree-`degree` polynomial (Chebyshev basis on the rescaled spectrum) is
/// fitted by least squares to the points `(λᵢ, i − ½)`; the fitted counts are
/// the unfolded levels. `trim_fraction` of the levels is dropped at each edge
/// before differencing.
pub fn unfold<T: Real>(eigenvalues: &[T], degree: usize, trim_fraction: T) -> Result<SpacingSeries<T>> {
    let n = eigenvalues.len();
    if degree < 1 {
        return Err(domain("unfolding degree must be >= 1"));
    }
    if n < degree + 10 {
        return Err(domain(format!(
            "unfolding degree {degree} needs at least {} levels, got {n}",
            degree + 10
        )));
    }
    if !(trim_fraction >= T::zero() && trim_fraction <= T::lit(0.4)) {
        return Err(domain(format!(
            "trim fraction must lie in [0, 0.4], got {trim_fraction}"
        )));
    }
    if eigenvalues.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(domain("eigenvalues must be strictly increasing"));
    }
    let (lo, hi) = (eigenvalues[0], eigenvalues[n - 1]);
    let center = (hi + lo) * T::lit(0.5);
    let half_width = (hi - lo) * T::lit(0.5);
    let rows: Vec<Vec<T>> = eigenvalues
        .iter()
        .map(|&x| chebyshev_row((x - center) / half_width, degree))
        .collect();
    let columns = (0..=degree)
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect();
    let staircase = (0..n).map(|i| T::from_usize_lossy(i) + T::lit(0.5)).collect();
    let coeffs = least_squares(columns, staircase)?;
    let unfolded: Vec<T> = rows
        .iter()
        .map(|r| r.iter().zip(&coeffs).map(|(b, c)| *b * *c).sum())
        .collect();

    let cut = (trim_fraction * T::from_usize_lossy(n))
        .floor()
        .to_usize()
        .unwrap_or(0);
    let retained = &unfolded[cut..n - cut];
    if retained.len() < 2 {
        return Err(domain("trimming left fewer than two levels"));
    }
    let gaps: Vec<T> = retained.windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.iter().any(|g| !(*g > T::zero())) {
        return Err(numeric(format!(
            "fitted staircase of degree {degree} is not monotone over the retained levels"
        )));
    }
    SpacingSeries::normalized(gaps, Provenance::UnfoldedBulk)
}

/// Concatenates series of one provenance and renormalizes to unit mean.
pub fn pool_spacings<T: Real>(series: &[SpacingSeries<T>]) -> Result<SpacingSeries<T>> {
    let first = series.first().ok_or_else(|| domain("nothing to pool"))?;
    if series.iter().any(|s| s.provenance != first.provenance) {
        return Err(domain("cannot pool spacing series of mixed provenance"));
    }
    let all = series.iter().flat_map(|s| s.spacings.iter().copied()).collect();
    SpacingSeries::normalized(all, first.provenance)
}

/// Distinct-level spectra of `count` independent members; member `i` draws
/// from `stream.split(i)`.
pub fn sample_spectra<T: Real>(
    stream: &RandomStream,
    kind: EnsembleKind,
    n: usize,
    count: usize,
) -> Result<Vec<SpectralData<T>>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut sub = stream.split(i as u64);
            sample_matrix::<T>(&mut sub, kind, n)?.spectrum()
        })
        .collect()
}

/// Pooled unfolded bulk spacings of `count` members of size `n`.
pub fn bulk_spacings<T: Real>(
    stream: &RandomStream,
    kind: EnsembleKind,
    n: usize,
    count: usize,
    degree: usize,
    trim_fraction: T,
) -> Result<SpacingSeries<T>> {
    if count == 0 {
        return Err(domain("need at least one matrix"));
    }
    let series: Vec<SpacingSeries<T>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut sub = stream.split(i as u64);
            let spectrum = sample_matrix::<T>(&mut sub, kind, n)?.spectrum()?;
            unfold(&spectrum.eigenvalues, degree, trim_fraction)
        })
        .collect::<Result<_>>()?;
    pool_spacings(&series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn equally_spaced_unfolds_to_unit_spacings() {
        let levels: Vec<f64> = (1..=100).map(f64::from).collect();
        let s = unfold(&levels, 1, 0.1).unwrap();
        assert_eq!(s.len(), 79);
        for &x in s.spacings() {
            assert_abs_diff_eq!(x, 1.0, epsilon = 1e-9);
        }
        assert_eq!(s.provenance(), Provenance::UnfoldedBulk);
    }

    #[test]
    fn unfold_domain_errors() {
        let levels: Vec<f64> = (0..12).map(f64::from).collect();
        assert!(unfold(&levels, 7, 0.1).is_err());
        let levels: Vec<f64> = (0..40).map(f64::from).collect();
        assert!(unfold(&levels, 3, 0.45).is_err());
        assert!(unfold(&levels, 0, 0.1).is_err());
        let mut dup = levels.clone();
        dup[5] = dup[4];
        assert!(unfold(&dup, 3, 0.1).is_err());
    }

    #[test]
    fn non_monotone_fit_is_reported() {
        // three tight clusters: a cubic staircase fit overshoots between them
        let levels: Vec<f64> = (0..60)
            .map(|i| (i / 20) as f64 + (i % 20) as f64 * 0.01 / 19.0)
            .collect();
        let r = unfold(&levels, 3, 0.0);
        assert!(matches!(r, Err(crate::Error::Numeric(_))), "{r:?}");
    }

    #[test]
    fn pooling() {
        let a = SpacingSeries::normalized(vec![1.0, 2.0, 3.0], Provenance::UnfoldedBulk).unwrap();
        let pooled = pool_spacings(std::slice::from_ref(&a)).unwrap();
        assert_eq!(pooled, a);
        let b = SpacingSeries::normalized(vec![5.0, 1.0], Provenance::UnfoldedBulk).unwrap();
        let p = pool_spacings(&[a.clone(), b]).unwrap();
        assert_eq!(p.len(), 5);
        assert_abs_diff_eq!(p.mean(), 1.0, epsilon = 1e-12);
        let c = SpacingSeries::normalized(vec![1.0], Provenance::TwoByTwoExact).unwrap();
        assert!(pool_spacings(&[a, c]).is_err());
        assert!(pool_spacings::<f64>(&[]).is_err());
    }

    #[test]
    fn pooling_halves_reproduces_whole() {
        // halves with equal raw means pool back to exactly the whole series
        let raw = vec![0.5, 1.5, 2.0, 1.0, 0.25, 1.75, 2.0, 1.0];
        let whole = SpacingSeries::normalized(raw.clone(), Provenance::TwoByTwoExact).unwrap();
        let left = SpacingSeries::normalized(raw[..4].to_vec(), Provenance::TwoByTwoExact).unwrap();
        let right = SpacingSeries::normalized(raw[4..].to_vec(), Provenance::TwoByTwoExact).unwrap();
        let pooled = pool_spacings(&[left, right]).unwrap();
        for (p, w) in pooled.spacings().iter().zip(whole.spacings()) {
            assert_abs_diff_eq!(*p, *w, epsilon = 1e-12);
        }
    }

    #[test]
    fn normalization_rejects_degenerate_input() {
        assert!(SpacingSeries::<f64>::normalized(vec![], Provenance::TwoByTwoExact).is_err());
        assert!(SpacingSeries::normalized(vec![0.0, 0.0], Provenance::TwoByTwoExact).is_err());
        assert!(SpacingSeries::normalized(vec![-1.0, 2.0], Provenance::TwoByTwoExact).is_err());
    }

    #[test]
    fn two_by_two_unit_mean_and_replay() {
        let stream = RandomStream::new(5, 0);
        for kind in EnsembleKind::ALL {
            let s = spacings_2x2::<f64>(&stream, kind, 10_000).unwrap();
            assert_eq!(s.len(), 10_000);
            assert_abs_diff_eq!(s.mean(), 1.0, epsilon = 1e-12);
            let again = spacings_2x2::<f64>(&stream, kind, 10_000).unwrap();
            assert_eq!(s, again);
        }
    }
}
