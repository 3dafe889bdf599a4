//! Support sets, exponential sums and their tropicalization.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::{Error, Result};

/// Default absolute band (in log scale) within which two terms count as tied.
pub const DEFAULT_TIE_TOL: f64 = 1e-12;

/// An ordered list of pairwise distinct exponent vectors in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSet {
    dim: usize,
    exponents: Vec<Vec<f64>>,
}

impl SupportSet {
    pub fn new(dim: usize, exponents: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if exponents.is_empty() {
            return Err(Error::Empty);
        }
        for (k, e) in exponents.iter().enumerate() {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.len(),
                });
            }
            if e.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(k));
            }
        }
        for j in 0..exponents.len() {
            for k in j + 1..exponents.len() {
                if exponents[j] == exponents[k] {
                    return Err(Error::DuplicateExponent(j, k));
                }
            }
        }
        Ok(Self { dim, exponents })
    }

    /// Convenience constructor for `d = 1`.
    pub fn univariate(points: &[f64]) -> Result<Self> {
        Self::new(1, points.iter().map(|&p| alloc::vec![p]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of terms, `n + 1`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, k: usize) -> &[f64] {
        &self.exponents[k]
    }

    pub fn exponents(&self) -> &[Vec<f64>] {
        &self.exponents
    }

    /// Euclidean distance `|λ_j − λ_k|`.
    pub fn distance(&self, j: usize, k: usize) -> f64 {
        euclidean(&self.exponents[j], &self.exponents[k])
    }

    /// True when every exponent is an integer vector.
    pub fn is_integral(&self) -> bool {
        self.exponents.iter().flatten().all(|v| v.fract() == 0.0)
    }

    /// Minimal pairwise distance, by exhaustive scan.
    pub fn mu(&self) -> Result<f64> {
        if self.len() < 2 {
            return Err(Error::MuUndefined);
        }
        let mut best = f64::INFINITY;
        for j in 0..self.len() {
            for k in j + 1..self.len() {
                best = best.min(self.distance(j, k));
            }
        }
        Ok(best)
    }

    /// Every exponent shifted by `v`.
    pub fn translated(&self, v: &[f64]) -> Result<Self> {
        self.check_dim(v.len())?;
        let exponents = self
            .exponents
            .iter()
            .map(|e| e.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        Self::new(self.dim, exponents)
    }

    /// Every exponent multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument("scale must be positive"));
        }
        let exponents = self
            .exponents
            .iter()
            .map(|e| e.iter().map(|a| a * s).collect())
            .collect();
        Self::new(self.dim, exponents)
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        Ok(())
    }
}

/// Minimal pairwise distance of a support set.
pub fn mu(support: &SupportSet) -> Result<f64> {
    support.mu()
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `f(z) = Σ_k c_k exp(⟨λ_k, z⟩)` with nonzero complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    support: SupportSet,
    coefficients: Vec<Complex64>,
}

/// Argmax set and value of the tropicalization at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Dominant {
    pub indices: Vec<usize>,
    pub value: f64,
}

impl Dominant {
    /// The dominant index when it is unique.
    pub fn unique(&self) -> Option<usize> {
        match self.indices.as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }
}

impl ExponentialSum {
    pub fn new(support: SupportSet, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() != support.len() {
            return Err(Error::LengthMismatch {
                exponents: support.len(),
                coefficients: coefficients.len(),
            });
        }
        for (k, c) in coefficients.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite(k));
            }
            if c.re == 0.0 && c.im == 0.0 {
                return Err(Error::ZeroCoefficient(k));
            }
        }
        Ok(Self {
            support,
            coefficients,
        })
    }

    /// Builds a sum with real coefficients.
    pub fn with_real_coefficients(support: SupportSet, coefficients: &[f64]) -> Result<Self> {
        Self::new(
            support,
            coefficients
                .iter()
                .map(|&c| Complex64::new(c, 0.0))
                .collect(),
        )
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }

    /// Number of terms, `n + 1`.
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// All exponents are integer vectors, so `f(z) = g(e^z)` for a Laurent polynomial `g`.
    pub fn is_polynomial(&self) -> bool {
        self.support.is_integral()
    }

    /// Same support, coefficients multiplied by `t`.
    pub fn scaled_coefficients(&self, t: Complex64) -> Result<Self> {
        Self::new(
            self.support.clone(),
            self.coefficients.iter().map(|c| c * t).collect(),
        )
    }

    /// `log|c_k| + ⟨λ_k, x⟩`, the k-th tropical term. `x` must have `d` entries.
    pub fn log_term(&self, k: usize, x: &[f64]) -> f64 {
        self.coefficients[k].norm().ln() + dot(self.support.exponent(k), x)
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        self.support.check_dim(z.len())?;
        Ok(self
            .support
            .exponents()
            .iter()
            .zip(&self.coefficients)
            .map(|(lambda, c)| {
                let inner: Complex64 = lambda.iter().zip(z).map(|(l, zj)| zj * l).sum();
                c * inner.exp()
            })
            .sum())
    }

    /// The tropicalization `max_k (log|c_k| + ⟨λ_k, x⟩)`.
    pub fn eval_tropical(&self, x: &[f64]) -> Result<f64> {
        self.support.check_dim(x.len())?;
        Ok((0..self.len())
            .map(|k| self.log_term(k, x))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Indices whose tropical term is within `tie_tol` of the maximum.
    pub fn dominant_indices(&self, x: &[f64], tie_tol: f64) -> Result<Dominant> {
        if !(tie_tol >= 0.0) {
            return Err(Error::InvalidArgument("tie tolerance must be nonnegative"));
        }
        self.support.check_dim(x.len())?;
        let terms: Vec<f64> = (0..self.len()).map(|k| self.log_term(k, x)).collect();
        let value = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let indices = terms
            .iter()
            .enumerate()
            .filter(|(_, &t)| value - t <= tie_tol)
            .map(|(k, _)| k)
            .collect();
        Ok(Dominant { indices, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::PI;

    fn binomial() -> ExponentialSum {
        ExponentialSum::with_real_coefficients(
            SupportSet::univariate(&[0.0, 1.0]).unwrap(),
            &[1.0, 1.0],
        )
        .unwrap()
    }

    fn trinomial_2d() -> ExponentialSum {
        let s = SupportSet::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        ExponentialSum::with_real_coefficients(s, &[1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn mu_examples() {
        assert_eq!(
            SupportSet::univariate(&[0.0, 1.0, 2.0])
                .unwrap()
                .mu()
                .unwrap(),
            1.0
        );
        let s = SupportSet::new(2, vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(mu(&s).unwrap(), 5.0);
        let s = SupportSet::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.25, 0.0]]).unwrap();
        assert_eq!(s.mu().unwrap(), 0.25);
        assert_eq!(
            SupportSet::univariate(&[3.0]).unwrap().mu(),
            Err(Error::MuUndefined)
        );
    }

    #[test]
    fn support_validation() {
        assert_eq!(SupportSet::new(0, vec![vec![]]), Err(Error::ZeroDimension));
        assert_eq!(SupportSet::new(1, vec![]), Err(Error::Empty));
        assert_eq!(
            SupportSet::new(3, vec![vec![0.0, 1.0]]),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            SupportSet::univariate(&[1.0, 1.0]),
            Err(Error::DuplicateExponent(0, 1))
        );
        let s = SupportSet::univariate(&[0.0]).unwrap();
        assert_eq!(
            ExponentialSum::new(s, vec![Complex64::new(0.0, 0.0)]),
            Err(Error::ZeroCoefficient(0))
        );
    }

    #[test]
    fn eval_examples() {
        let f = binomial();
        assert!(f.eval(&[Complex64::new(0.0, PI)]).unwrap().norm() < 1e-15);
        assert_eq!(
            f.eval(&[Complex64::new(0.0, 0.0)]).unwrap(),
            Complex64::new(2.0, 0.0)
        );
        let g = trinomial_2d();
        let z = [
            Complex64::new(2f64.ln(), 0.0),
            Complex64::new(3f64.ln(), 0.0),
        ];
        assert!((g.eval(&z).unwrap() - Complex64::new(6.0, 0.0)).norm() < 1e-14);
        assert!(matches!(
            g.eval(&z[..1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tropical_examples() {
        let f = binomial();
        assert_eq!(f.eval_tropical(&[2.0]).unwrap(), 2.0);
        assert_eq!(f.eval_tropical(&[0.0]).unwrap(), 0.0);
        let s = SupportSet::univariate(&[0.0, 2.0]).unwrap();
        let g = ExponentialSum::with_real_coefficients(s, &[3.0, 1.0]).unwrap();
        assert!((g.eval_tropical(&[0.0]).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn dominant_examples() {
        let f = binomial();
        assert_eq!(f.dominant_indices(&[2.0], 0.0).unwrap().indices, vec![1]);
        assert_eq!(f.dominant_indices(&[0.0], 0.0).unwrap().indices, vec![0, 1]);
        let d = trinomial_2d().dominant_indices(&[-2.0, -2.0], 0.0).unwrap();
        assert_eq!(d.indices, vec![0]);
        assert_eq!(d.unique(), Some(0));
        assert_eq!(d.value, 0.0);
        assert!(f.dominant_indices(&[0.0], -1.0).is_err());
    }

    #[test]
    fn polynomial_flag() {
        assert!(trinomial_2d().is_polynomial());
        let s = SupportSet::univariate(&[0.0, 0.5]).unwrap();
        assert!(!s.is_integral());
    }
}
