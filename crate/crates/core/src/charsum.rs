//! The characteristic exponential sum `Ξ_ι(δ) = Σ_{k≠ι} exp(−δ |λ_k − λ_ι|)`.
//!
//! `Ξ_ι` is strictly decreasing on `[0, ∞)` with `Ξ_ι(0) = n`, so for `n ≥ 2`
//! the equation `Ξ_ι(δ) = 1` has exactly one positive root `δ_ι`. The maximum
//! of these roots over all pivots is the support's distance bound: any point
//! farther than it from the tropical variety lies outside the amoeba.

use alloc::vec::Vec;

use crate::bisect::bisect_decreasing;
use crate::expsum::SupportSet;
use crate::{Error, Result};

/// Default residual tolerance for [`xi_root`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// The sorted distances `|λ_k − λ_ι|, k ≠ ι` for one pivot `ι`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    pivot: usize,
    distances: Vec<f64>,
}

impl DistanceProfile {
    pub fn from_support(support: &SupportSet, pivot: usize) -> Result<Self> {
        support.check_index(pivot)?;
        let mut distances: Vec<f64> = (0..support.len())
            .filter(|&k| k != pivot)
            .map(|k| support.distance(k, pivot))
            .collect();
        distances.sort_by(f64::total_cmp);
        Ok(Self { pivot, distances })
    }

    /// A profile from raw distances; each must be positive and finite.
    pub fn from_distances(pivot: usize, mut distances: Vec<f64>) -> Result<Self> {
        if distances.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
            return Err(Error::InvalidArgument(
                "distances must be positive and finite",
            ));
        }
        distances.sort_by(f64::total_cmp);
        Ok(Self { pivot, distances })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Ascending.
    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    /// `n`, the number of non-pivot terms.
    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn min_distance(&self) -> Option<f64> {
        self.distances.first().copied()
    }

    pub fn xi(&self, delta: f64) -> Result<f64> {
        if !(delta >= 0.0) {
            return Err(Error::InvalidArgument("delta must be nonnegative"));
        }
        Ok(self.xi_unchecked(delta))
    }

    // Ascending distances give descending terms; summed in that order.
    pub(crate) fn xi_unchecked(&self, delta: f64) -> f64 {
        if delta == 0.0 {
            return self.distances.len() as f64;
        }
        self.distances.iter().map(|d| (-delta * d).exp()).sum()
    }
}

/// Free-function form of [`DistanceProfile::xi`].
pub fn xi(profile: &DistanceProfile, delta: f64) -> Result<f64> {
    profile.xi(delta)
}

/// Root `δ_ι` of `Ξ_ι(δ) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// `Ξ_ι(root) − 1`.
    pub residual: f64,
    pub iterations: usize,
}

/// Solves `Ξ_ι(δ) = 1` by bisection on `[0, log(max(n, 2)) / m_ι]`.
///
/// The upper end is valid since `Ξ_ι(δ) ≤ n·exp(−δ m_ι)` where `m_ι` is the
/// smallest distance. Profiles with `n ≤ 1` return root 0.
pub fn xi_root(profile: &DistanceProfile, tol: f64) -> Result<RootResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let n = profile.len();
    if n <= 1 {
        let residual = n as f64 - 1.0;
        return Ok(RootResult {
            root: 0.0,
            residual,
            iterations: 0,
        });
    }
    let m = profile.distances[0];
    let hi = (n.max(2) as f64).ln() / m;
    let b = bisect_decreasing(|d| profile.xi_unchecked(d) - 1.0, 0.0, hi, tol, 0.0);
    Ok(RootResult {
        root: b.root,
        residual: b.value,
        iterations: b.iterations,
    })
}

/// The support's distance bound `max_ι δ_ι` and where it is attained.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaBound {
    pub value: f64,
    /// Smallest pivot attaining the maximum.
    pub pivot: usize,
    /// `δ_ι` for every pivot, in index order.
    pub roots: Vec<f64>,
}

pub fn delta_bound(support: &SupportSet, tol: f64) -> Result<DeltaBound> {
    if support.len() < 2 {
        return Err(Error::SingleTerm);
    }
    let mut roots = Vec::with_capacity(support.len());
    for pivot in 0..support.len() {
        let profile = DistanceProfile::from_support(support, pivot)?;
        roots.push(xi_root(&profile, tol)?.root);
    }
    let (pivot, value) =
        roots
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, r)| {
                if r > best.1 {
                    (k, r)
                } else {
                    best
                }
            });
    Ok(DeltaBound {
        value,
        pivot,
        roots,
    })
}
