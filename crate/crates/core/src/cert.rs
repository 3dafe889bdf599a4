//! Distance to the tropical variety, lopsidedness and point certificates.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::charsum::DistanceProfile;
use crate::expsum::{dot, ExponentialSum, SupportSet, DEFAULT_TIE_TOL};
use crate::{Error, Result};

/// Default width of the band around the tropical variety reported as on it.
pub const DEFAULT_CERT_TOL: f64 = 1e-9;

/// Relative margin for the strict lopsidedness inequality.
///
/// A point counts as lopsided only when the dominant modulus exceeds the sum
/// of the others by more than this fraction, so rounding can never turn an
/// exact equality into a lopsidedness claim.
pub const LOPSIDED_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    OnTropical,
    OutsideByLopsided,
    OutsideByDistance,
    /// Not a membership claim: the point may still lie outside the amoeba.
    Uncertified,
}

impl Status {
    pub fn is_outside(self) -> bool {
        matches!(self, Status::OutsideByLopsided | Status::OutsideByDistance)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::OnTropical => "ON_TROPICAL",
            Status::OutsideByLopsided => "OUTSIDE_BY_LOPSIDED",
            Status::OutsideByDistance => "OUTSIDE_BY_DISTANCE",
            Status::Uncertified => "UNCERTIFIED",
        }
    }
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub point: Vec<f64>,
    pub status: Status,
    pub dominant: Option<usize>,
    /// Euclidean distance from the point to the tropical variety.
    pub distance: f64,
    /// `Ξ_ι(distance)`; NaN when no dominant index exists.
    pub xi_at_distance: f64,
    /// Proven lower bound on `|f(x + iy)|` over all `y`; zero unless outside.
    pub modulus_floor: f64,
}

/// Distance from a point to the tropical variety together with the argmax set.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalDistance {
    pub distance: f64,
    /// A single index off the variety, the tie set on it.
    pub dominant: Vec<usize>,
}

impl TropicalDistance {
    pub fn unique(&self) -> Option<usize> {
        match self.dominant.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }
}

/// Exact Euclidean distance from `x` to the tropical variety.
///
/// With `ι` dominant, the cell of `ι` is the polyhedron cut out by the
/// half-spaces `log|c_ι| + ⟨λ_ι, y⟩ ≥ log|c_k| + ⟨λ_k, y⟩`, so the distance is
/// the smallest gap-over-norm ratio among these constraints.
pub fn distance_to_tropical(f: &ExponentialSum, x: &[f64]) -> Result<TropicalDistance> {
    if f.len() < 2 {
        return Err(Error::SingleTerm);
    }
    let dom = f.dominant_indices(x, DEFAULT_TIE_TOL)?;
    let Some(pivot) = dom.unique() else {
        return Ok(TropicalDistance {
            distance: 0.0,
            dominant: dom.indices,
        });
    };
    let support = f.support();
    let top = f.log_term(pivot, x);
    let distance = (0..f.len())
        .filter(|&k| k != pivot)
        .map(|k| (top - f.log_term(k, x)) / support.distance(k, pivot))
        .fold(f64::INFINITY, f64::min);
    Ok(TropicalDistance {
        distance,
        dominant: dom.indices,
    })
}

// Σ_{k≠ι} |c_k e^{⟨λ_k,x⟩}| / |c_ι e^{⟨λ_ι,x⟩}|, computed relative to the pivot term.
fn others_ratio(f: &ExponentialSum, x: &[f64], pivot: usize) -> f64 {
    let top = f.log_term(pivot, x);
    (0..f.len())
        .filter(|&k| k != pivot)
        .map(|k| (f.log_term(k, x) - top).exp())
        .sum()
}

/// The index `ι` whose term modulus strictly exceeds the sum of all others, if any.
pub fn is_lopsided(f: &ExponentialSum, x: &[f64]) -> Result<Option<usize>> {
    // Only the largest term can beat the rest.
    let dom = f.dominant_indices(x, 0.0)?;
    let pivot = dom.indices[0];
    if f.len() == 1 {
        return Ok(Some(pivot));
    }
    let ratio = others_ratio(f, x, pivot);
    Ok((1.0 > ratio * (1.0 + LOPSIDED_MARGIN)).then_some(pivot))
}

/// Classifies `x`: on the variety, outside by lopsidedness, outside by the
/// distance criterion `Ξ_ι(distance) < 1`, or uncertified.
pub fn certify_point(f: &ExponentialSum, x: &[f64], tol: f64) -> Result<Certificate> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let td = distance_to_tropical(f, x)?;
    let mut cert = Certificate {
        point: x.to_vec(),
        status: Status::Uncertified,
        dominant: td.unique(),
        distance: td.distance,
        xi_at_distance: f64::NAN,
        modulus_floor: 0.0,
    };
    let Some(pivot) = cert.dominant else {
        cert.status = Status::OnTropical;
        return Ok(cert);
    };
    let profile = DistanceProfile::from_support(f.support(), pivot)?;
    cert.xi_at_distance = profile.xi_unchecked(td.distance);
    if td.distance <= tol {
        cert.status = Status::OnTropical;
        return Ok(cert);
    }
    let top = f.log_term(pivot, x).exp();
    if is_lopsided(f, x)? == Some(pivot) {
        cert.status = Status::OutsideByLopsided;
        cert.modulus_floor = top * (1.0 - others_ratio(f, x, pivot));
    } else if cert.xi_at_distance < 1.0 {
        cert.status = Status::OutsideByDistance;
        cert.modulus_floor = top * (1.0 - cert.xi_at_distance);
    }
    Ok(cert)
}

/// The distance criterion alone, skipping the lopsidedness test.
///
/// Returns `OutsideByDistance` when `Ξ_ι(distance) < 1`, with the floor
/// `|c_ι| e^{⟨λ_ι, x⟩} (1 − Ξ_ι(distance))`.
pub fn distance_certificate(f: &ExponentialSum, x: &[f64], tol: f64) -> Result<Certificate> {
    let mut cert = certify_point(f, x, tol)?;
    if cert.status == Status::OutsideByLopsided {
        let pivot = cert.dominant.expect("lopsided certificates carry a pivot");
        cert.status = Status::Uncertified;
        cert.modulus_floor = 0.0;
        if cert.xi_at_distance < 1.0 {
            cert.status = Status::OutsideByDistance;
            cert.modulus_floor = f.log_term(pivot, x).exp() * (1.0 - cert.xi_at_distance);
        }
    }
    Ok(cert)
}

/// Builds an exponential sum on `support` for which `x` sits at distance
/// exactly `delta` from the tropical variety, with `pivot` dominant, while
/// failing to be lopsided.
///
/// Moduli: `|c_ι| = 1` and `|c_k| = exp(⟨λ_ι − λ_k, x⟩ − δ |λ_k − λ_ι|)`, so
/// every constraint of the distance lemma is tight. All arguments are zero.
pub fn converse_witness(
    support: &SupportSet,
    pivot: usize,
    delta: f64,
    x: &[f64],
) -> Result<ExponentialSum> {
    support.check_dim(x.len())?;
    if support.len() < 2 {
        return Err(Error::SingleTerm);
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    let profile = DistanceProfile::from_support(support, pivot)?;
    let xi = profile.xi_unchecked(delta);
    if xi < 1.0 {
        return Err(Error::NoWitness { xi });
    }
    let anchor = dot(support.exponent(pivot), x);
    let coefficients = (0..support.len())
        .map(|k| {
            let modulus = if k == pivot {
                1.0
            } else {
                (anchor - dot(support.exponent(k), x) - delta * support.distance(k, pivot)).exp()
            };
            Complex64::new(modulus, 0.0)
        })
        .collect();
    let f = ExponentialSum::new(support.clone(), coefficients)?;

    let td = distance_to_tropical(&f, x)?;
    if td.unique() != Some(pivot) {
        return Err(Error::Invariant("witness pivot is not dominant"));
    }
    if (td.distance - delta).abs() > 1e-9 * delta.max(1.0) {
        return Err(Error::Invariant("witness distance differs from delta"));
    }
    if is_lopsided(&f, x)?.is_some() {
        return Err(Error::Invariant("witness is lopsided"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn line(points: &[f64], coeffs: &[f64]) -> ExponentialSum {
        ExponentialSum::with_real_coefficients(SupportSet::univariate(points).unwrap(), coeffs)
            .unwrap()
    }

    fn trinomial_2d() -> ExponentialSum {
        let s = SupportSet::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        ExponentialSum::with_real_coefficients(s, &[1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn distance_examples() {
        let f = line(&[0.0, 1.0], &[1.0, 1.0]);
        let d = distance_to_tropical(&f, &[2.0]).unwrap();
        assert_eq!((d.distance, d.unique()), (2.0, Some(1)));
        let d = distance_to_tropical(&f, &[-3.0]).unwrap();
        assert_eq!((d.distance, d.unique()), (3.0, Some(0)));
        let d = distance_to_tropical(&f, &[0.0]).unwrap();
        assert_eq!((d.distance, d.dominant.clone()), (0.0, vec![0, 1]));
        let d = distance_to_tropical(&trinomial_2d(), &[-2.0, -2.0]).unwrap();
        assert_eq!((d.distance, d.unique()), (2.0, Some(0)));
        assert_eq!(
            distance_to_tropical(&line(&[1.0], &[1.0]), &[0.0]),
            Err(Error::SingleTerm)
        );
    }

    #[test]
    fn lopsided_examples() {
        assert_eq!(
            is_lopsided(&line(&[0.0, 1.0, 2.0], &[1.0, 1.0, 3.0]), &[0.0]).unwrap(),
            Some(2)
        );
        assert_eq!(
            is_lopsided(&line(&[0.0, 1.0, 2.0], &[1.0, 1.0, 1.0]), &[0.0]).unwrap(),
            None
        );
        assert_eq!(
            is_lopsided(&line(&[0.0, 1.0], &[1.0, 1.0]), &[0.1]).unwrap(),
            Some(1)
        );
        assert_eq!(
            is_lopsided(&line(&[0.0, 1.0], &[1.0, 1.0]), &[0.0]).unwrap(),
            None
        );
    }

    #[test]
    fn certify_examples() {
        let binom = line(&[0.0, 1.0], &[1.0, 1.0]);
        let c = certify_point(&binom, &[0.5], DEFAULT_CERT_TOL).unwrap();
        assert_eq!(c.status, Status::OutsideByLopsided);
        assert!((c.modulus_floor - (0.5f64.exp() - 1.0)).abs() < 1e-12);

        let f = line(&[0.0, 1.0, 2.0], &[1.0, 1.0, 1.0]);
        let c = certify_point(&f, &[1.0], DEFAULT_CERT_TOL).unwrap();
        assert!(c.status.is_outside());
        assert_eq!(c.dominant, Some(2));
        assert_eq!(c.distance, 1.0);
        let xi = (-1f64).exp() + (-2f64).exp();
        assert!((c.xi_at_distance - xi).abs() < 1e-15);
        assert!((xi - 0.5032).abs() < 1e-4);

        let c = certify_point(&f, &[0.3], DEFAULT_CERT_TOL).unwrap();
        assert_eq!(c.status, Status::Uncertified);
        assert_eq!(c.dominant, Some(2));
        assert!((c.distance - 0.3).abs() < 1e-15);
        assert!((c.xi_at_distance - 1.2896).abs() < 1e-4);
        assert_eq!(c.modulus_floor, 0.0);

        let c = certify_point(&f, &[0.0], DEFAULT_CERT_TOL).unwrap();
        assert_eq!(
            (c.status, c.distance, c.dominant),
            (Status::OnTropical, 0.0, None)
        );
    }

    #[test]
    fn distance_only_certificate() {
        let f = line(&[0.0, 1.0, 2.0], &[1.0, 1.0, 1.0]);
        let c = distance_certificate(&f, &[1.0], DEFAULT_CERT_TOL).unwrap();
        assert_eq!(c.status, Status::OutsideByDistance);
        let expected = 2f64.exp() * (1.0 - (-1f64).exp() - (-2f64).exp());
        assert!((c.modulus_floor - expected).abs() < 1e-12);
        let c = distance_certificate(&f, &[0.3], DEFAULT_CERT_TOL).unwrap();
        assert_eq!(c.status, Status::Uncertified);
    }

    #[test]
    fn witness_examples() {
        let s = SupportSet::univariate(&[0.0, 1.0, 2.0]).unwrap();
        let f = converse_witness(&s, 1, 0.5, &[0.0]).unwrap();
        let h = (-0.5f64).exp();
        for (c, e) in f.coefficients().iter().zip([h, 1.0, h]) {
            assert!((c.re - e).abs() < 1e-15 && c.im == 0.0);
        }
        assert_eq!(distance_to_tropical(&f, &[0.0]).unwrap().distance, 0.5);

        let f = converse_witness(&s, 1, 2f64.ln(), &[0.0]).unwrap();
        for (c, e) in f.coefficients().iter().zip([0.5, 1.0, 0.5]) {
            assert!((c.re - e).abs() < 1e-15);
        }
        assert_eq!(is_lopsided(&f, &[0.0]).unwrap(), None);

        match converse_witness(&s, 1, 1.0, &[0.0]) {
            Err(Error::NoWitness { xi }) => assert!((xi - 2.0 * (-1f64).exp()).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }
}
