//! Distance-driven fading: the fading figure grows as a transmitter and
//! receiver approach, moving windowed envelope statistics across ensemble
//! classes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{beta_from_m, NakagamiParams};
use crate::error::{domain, Error, Result};
use crate::gof::{fit_report, FitReport};
use crate::numerics::RandomStream;
use crate::scalar::Real;

/// Fading figure `m` used for distances strictly above `above` (meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSegment<T> {
    pub above: T,
    pub m: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct ProfileSpec<T> {
    segments: Vec<ProfileSegment<T>>,
}

/// Piecewise-constant map from distance to fading figure.
///
/// Segments are ordered by strictly decreasing `above`, the last one has
/// `above = 0`, and a distance belongs to the first segment it exceeds. A
/// distance equal to a breakpoint therefore falls in the nearer, larger-`m`
/// segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileSpec<T>", into = "ProfileSpec<T>")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct DistanceProfile<T: Real> {
    segments: Vec<ProfileSegment<T>>,
}

impl<T: Real> DistanceProfile<T> {
    pub fn new(segments: Vec<ProfileSegment<T>>) -> Result<Self> {
        let last = segments
            .last()
            .ok_or_else(|| domain("distance profile needs at least one segment"))?;
        if last.above != T::zero() {
            return Err(domain("last profile segment must start at distance 0"));
        }
        if segments.windows(2).any(|w| !(w[0].above > w[1].above)) {
            return Err(domain("profile breakpoints must be strictly decreasing"));
        }
        if let Some(bad) = segments
            .iter()
            .find(|s| !(s.m >= T::lit(0.5)) || !s.m.is_finite() || !s.above.is_finite())
        {
            return Err(domain(format!(
                "profile segment above {} has invalid m = {} (need m >= 0.5)",
                bad.above, bad.m
            )));
        }
        Ok(Self { segments })
    }

    /// m = 1 beyond 150 m, 1.5 between 50 m and 150 m, 3 within 50 m.
    pub fn highway() -> Self {
        Self::new(vec![
            ProfileSegment {
                above: T::lit(150.0),
                m: T::one(),
            },
            ProfileSegment {
                above: T::lit(50.0),
                m: T::lit(1.5),
            },
            ProfileSegment {
                above: T::zero(),
                m: T::lit(3.0),
            },
        ])
        .expect("built-in profile is valid")
    }

    pub fn segments(&self) -> &[ProfileSegment<T>] {
        &self.segments
    }

    pub fn m_of_distance(&self, d: T) -> Result<T> {
        if !(d > T::zero()) || !d.is_finite() {
            return Err(domain(format!("distance must be > 0, got {d}")));
        }
        Ok(self
            .segments
            .iter()
            .find(|s| d > s.above)
            .expect("last segment covers every positive distance")
            .m)
    }
}

impl<T: Real> Default for DistanceProfile<T> {
    fn default() -> Self {
        Self::highway()
    }
}

impl<T: Real> TryFrom<ProfileSpec<T>> for DistanceProfile<T> {
    type Error = Error;

    fn try_from(spec: ProfileSpec<T>) -> Result<Self> {
        Self::new(spec.segments)
    }
}

impl<T: Real> From<DistanceProfile<T>> for ProfileSpec<T> {
    fn from(p: DistanceProfile<T>) -> Self {
        ProfileSpec { segments: p.segments }
    }
}

/// Outcome for one distance window. A failed fit leaves the error in `fit`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowResult<T> {
    pub distance: T,
    pub true_m: T,
    pub true_beta: T,
    pub fit: Result<FitReport<T>>,
}

/// Samples and fits a single window from `stream`.
pub fn run_window<T: Real>(
    stream: &mut RandomStream,
    profile: &DistanceProfile<T>,
    distance: T,
    n: usize,
    tol_beta: T,
) -> Result<WindowResult<T>> {
    let true_m = profile.m_of_distance(distance)?;
    let params = NakagamiParams::unit_mean(true_m)?;
    let samples = params.sample(stream, n);
    Ok(WindowResult {
        distance,
        true_m,
        true_beta: beta_from_m(true_m)?,
        fit: fit_report(&samples, tol_beta),
    })
}

/// Runs one window per distance; window `i` draws from `stream.split(i)`.
pub fn run_transition_scenario<T: Real>(
    stream: &RandomStream,
    profile: &DistanceProfile<T>,
    distances: &[T],
    n_per_window: usize,
    tol_beta: T,
) -> Result<Vec<WindowResult<T>>> {
    if distances.is_empty() {
        return Err(domain("scenario needs at least one distance"));
    }
    if distances.iter().any(|d| !(*d > T::zero()) || !d.is_finite()) {
        return Err(domain("distances must be positive"));
    }
    if distances.windows(2).any(|w| !(w[0] > w[1])) {
        return Err(domain("distances must be strictly descending"));
    }
    if n_per_window < 100 {
        return Err(domain(format!(
            "need at least 100 samples per window, got {n_per_window}"
        )));
    }
    if !(tol_beta > T::zero()) {
        return Err(domain(format!("tol_beta must be > 0, got {tol_beta}")));
    }
    distances
        .par_iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut sub = stream.split(i as u64);
            run_window(&mut sub, profile, d, n_per_window, tol_beta)
        })
        .collect()
}
