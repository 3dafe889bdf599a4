//! Brute-force verifiers, independent of the certification path.
//!
//! None of these certify anything on their own: `poly_roots` is a plain
//! simultaneous iteration and `fiber_min` is a grid search. They exist to
//! corroborate the bounds computed elsewhere in the crate.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::bisect::bisect_decreasing;
use crate::expsum::{dot, ExponentialSum, SupportSet};
use crate::{Error, Result};

/// Iteration cap for [`poly_roots`].
pub const ROOT_ITERATION_CAP: usize = 500;
/// Largest degree [`poly_roots`] accepts.
pub const MAX_ROOT_DEGREE: usize = 64;
/// Largest number of grid points [`fiber_min`] evaluates.
pub const MAX_FIBER_POINTS: usize = 1 << 26;

/// `g(w) = Σ_{k=0}^n c_k w^k` with `c_n ≠ 0` and `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariatePolynomial {
    coefficients: Vec<Complex64>,
}

impl UnivariatePolynomial {
    /// Coefficients in ascending degree order.
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidArgument(
                "polynomial degree must be at least 1",
            ));
        }
        if coefficients
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidArgument("coefficients must be finite"));
        }
        let lead = coefficients[coefficients.len() - 1];
        if lead.re == 0.0 && lead.im == 0.0 {
            return Err(Error::InvalidArgument(
                "leading coefficient must be nonzero",
            ));
        }
        Ok(Self { coefficients })
    }

    pub fn from_real(coefficients: &[f64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| Complex64::new(c, 0.0))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
    }

    /// `Σ |c_k| |w|^k`, the natural scale for the residual at `w`.
    pub fn abs_scale(&self, w: Complex64) -> f64 {
        let r = w.norm();
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// The exponential sum `f(z) = g(e^z)` over the nonzero coefficients.
    pub fn to_exponential_sum(&self) -> Result<ExponentialSum> {
        let (exponents, coefficients): (Vec<Vec<f64>>, Vec<Complex64>) = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(k, c)| (vec![k as f64], *c))
            .unzip();
        ExponentialSum::new(SupportSet::new(1, exponents)?, coefficients)
    }
}

/// All roots of `g` by Durand–Kerner iteration.
///
/// Starts from points on the circle of radius `1 + max|c_k/c_n|` with angles
/// offset by 0.4 rad, and accepts the result when every root satisfies
/// `|g(r)| ≤ tol · Σ|c_k||r|^k`.
pub fn poly_roots(g: &UnivariatePolynomial, tol: f64) -> Result<Vec<Complex64>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let n = g.degree();
    if n > MAX_ROOT_DEGREE {
        return Err(Error::InvalidArgument(
            "degree too large for the root oracle",
        ));
    }
    let lead = g.coefficients[n];
    let monic: Vec<Complex64> = g.coefficients.iter().map(|c| c / lead).collect();
    let eval_monic = |w: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c)
    };

    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();

    let mut iterations = 0;
    while iterations < ROOT_ITERATION_CAP {
        iterations += 1;
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            if denom.norm() == 0.0 {
                // coincident iterates; nudge apart
                roots[i] = zi + Complex64::new(1e-8 * radius, 1e-8 * radius);
                max_step = f64::INFINITY;
                continue;
            }
            let step = eval_monic(zi) / denom;
            roots[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + zi.norm()));
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    if roots
        .iter()
        .any(|&r| g.eval(r).norm() > tol * g.abs_scale(r))
    {
        return Err(Error::NoConvergence {
            iterations,
            best: roots,
        });
    }
    Ok(roots)
}

/// Minimum of `|f(x + iy)|` over the grid `y ∈ (2π/N)·{0..N−1}^d`, followed by
/// one Gauss–Newton descent from the best grid point.
///
/// Requires integer exponents so that the fiber is `2π`-periodic.
pub fn fiber_min(f: &ExponentialSum, x: &[f64], grid_n: usize) -> Result<f64> {
    let search = FiberSearch::new(f, x, grid_n)?;
    let (grid_min, best) = search.grid_min();
    Ok(search.descend(best, grid_min))
}

/// [`fiber_min`] without the local descent.
pub fn fiber_grid_min(f: &ExponentialSum, x: &[f64], grid_n: usize) -> Result<f64> {
    Ok(FiberSearch::new(f, x, grid_n)?.grid_min().0)
}

struct FiberSearch {
    dim: usize,
    grid_n: usize,
    // c_k e^{⟨λ_k, x⟩}
    amplitudes: Vec<Complex64>,
    exponents: Vec<Vec<i64>>,
}

impl FiberSearch {
    fn new(f: &ExponentialSum, x: &[f64], grid_n: usize) -> Result<Self> {
        f.support().check_dim(x.len())?;
        if !f.is_polynomial() {
            return Err(Error::NonPolynomial);
        }
        if grid_n == 0 {
            return Err(Error::InvalidArgument("grid size must be positive"));
        }
        let dim = f.dim();
        let points = (grid_n as f64).powi(dim as i32);
        if points > MAX_FIBER_POINTS as f64 {
            return Err(Error::InvalidArgument("fiber grid too large"));
        }
        let amplitudes = f
            .support()
            .exponents()
            .iter()
            .zip(f.coefficients())
            .map(|(lambda, c)| c * dot(lambda, x).exp())
            .collect();
        let exponents = f
            .support()
            .exponents()
            .iter()
            .map(|lambda| lambda.iter().map(|&v| v as i64).collect())
            .collect();
        Ok(Self {
            dim,
            grid_n,
            amplitudes,
            exponents,
        })
    }

    fn grid_min(&self) -> (f64, Vec<f64>) {
        let n = self.grid_n as i64;
        let unity: Vec<Complex64> = (0..n)
            .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64))
            .collect();
        let mut index = vec![0i64; self.dim];
        let mut best = (f64::INFINITY, vec![0i64; self.dim]);
        loop {
            let value: Complex64 = self
                .amplitudes
                .iter()
                .zip(&self.exponents)
                .map(|(a, e)| {
                    let phase = e
                        .iter()
                        .zip(&index)
                        .map(|(p, q)| p * q)
                        .sum::<i64>()
                        .rem_euclid(n);
                    a * unity[phase as usize]
                })
                .sum();
            let modulus = value.norm();
            if modulus < best.0 {
                best = (modulus, index.clone());
            }
            let mut i = 0;
            while i < self.dim {
                index[i] += 1;
                if index[i] < n {
                    break;
                }
                index[i] = 0;
                i += 1;
            }
            if i == self.dim {
                break;
            }
        }
        let step = 2.0 * PI / self.grid_n as f64;
        (best.0, best.1.iter().map(|&j| j as f64 * step).collect())
    }

    // F(y), its gradient ∂F/∂y_j and Hessian ∂²F/∂y_j∂y_l.
    fn eval(&self, y: &[f64]) -> Local {
        let d = self.dim;
        let mut local = Local {
            value: Complex64::new(0.0, 0.0),
            jac: vec![Complex64::new(0.0, 0.0); d],
            hess: vec![Complex64::new(0.0, 0.0); d * d],
        };
        for (a, e) in self.amplitudes.iter().zip(&self.exponents) {
            let theta: f64 = e.iter().zip(y).map(|(&p, q)| p as f64 * q).sum();
            let term = a * Complex64::from_polar(1.0, theta);
            local.value += term;
            let it = term * Complex64::i();
            for j in 0..d {
                local.jac[j] += it * e[j] as f64;
                for l in 0..d {
                    local.hess[j * d + l] -= term * (e[j] * e[l]) as f64;
                }
            }
        }
        local
    }

    fn modulus(&self, y: &[f64]) -> f64 {
        self.eval(y).value.norm()
    }

    // Minimizes |F|² from `y`: Newton steps where the Hessian of |F|² is
    // positive definite, Gauss–Newton steps otherwise, both with backtracking.
    fn descend(&self, mut y: Vec<f64>, grid_best: f64) -> f64 {
        let mut current = self.modulus(&y);
        for _ in 0..100 {
            if current == 0.0 {
                break;
            }
            let local = self.eval(&y);
            let candidates = [
                newton_step(&local, self.dim),
                gauss_newton_step(local.value, &local.jac),
            ];
            let mut moved = false;
            for step in candidates.into_iter().flatten() {
                let mut t = 1.0;
                for _ in 0..40 {
                    let trial: Vec<f64> = y.iter().zip(&step).map(|(a, b)| a + t * b).collect();
                    let m = self.modulus(&trial);
                    if m < current {
                        moved = trial != y;
                        y = trial;
                        current = m;
                        break;
                    }
                    t *= 0.5;
                }
                if moved {
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        grid_best.min(current)
    }
}

struct Local {
    value: Complex64,
    jac: Vec<Complex64>,
    // row-major d×d
    hess: Vec<Complex64>,
}

// Newton step for φ(y) = |F(y)|²/2; None unless the Hessian is positive definite.
fn newton_step(local: &Local, d: usize) -> Option<Vec<f64>> {
    let conj = local.value.conj();
    let grad: Vec<f64> = local.jac.iter().map(|j| (conj * j).re).collect();
    let mut h = vec![0.0; d * d];
    for j in 0..d {
        for l in 0..d {
            h[j * d + l] =
                (local.jac[j].conj() * local.jac[l]).re + (conj * local.hess[j * d + l]).re;
        }
    }
    // Cholesky, in place in the lower triangle
    for j in 0..d {
        let mut diag = h[j * d + j];
        for k in 0..j {
            diag -= h[j * d + k] * h[j * d + k];
        }
        if !(diag > 1e-300) {
            return None;
        }
        let diag = diag.sqrt();
        h[j * d + j] = diag;
        for i in j + 1..d {
            let mut v = h[i * d + j];
            for k in 0..j {
                v -= h[i * d + k] * h[j * d + k];
            }
            h[i * d + j] = v / diag;
        }
    }
    let mut z = vec![0.0; d];
    for i in 0..d {
        let mut v = -grad[i];
        for k in 0..i {
            v -= h[i * d + k] * z[k];
        }
        z[i] = v / h[i * d + i];
    }
    for i in (0..d).rev() {
        let mut v = z[i];
        for k in i + 1..d {
            v -= h[k * d + i] * z[k];
        }
        z[i] = v / h[i * d + i];
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

// Minimum-norm real step Δ with F + Σ J_j Δ_j ≈ 0, falling back to a scaled
// gradient step when the 2×2 Gram matrix is singular (always the case for d = 1).
fn gauss_newton_step(value: Complex64, jac: &[Complex64]) -> Option<Vec<f64>> {
    let r = [-value.re, -value.im];
    let (mut g11, mut g12, mut g22) = (0.0, 0.0, 0.0);
    for j in jac {
        g11 += j.re * j.re;
        g12 += j.re * j.im;
        g22 += j.im * j.im;
    }
    let trace = g11 + g22;
    if trace == 0.0 {
        return None;
    }
    let det = g11 * g22 - g12 * g12;
    let coeffs = if det > 1e-12 * trace * trace {
        [
            (g22 * r[0] - g12 * r[1]) / det,
            (g11 * r[1] - g12 * r[0]) / det,
        ]
    } else {
        [r[0] / trace, r[1] / trace]
    };
    Some(
        jac.iter()
            .map(|j| j.re * coeffs[0] + j.im * coeffs[1])
            .collect(),
    )
}

/// `2 · max(|c_{n−1}/c_n|, |c_{n−2}/c_n|^{1/2}, …, |c_1/c_n|^{1/(n−1)}, |c_0/(2c_n)|^{1/n})`.
pub fn fujiwara_expr(g: &UnivariatePolynomial) -> f64 {
    let n = g.degree();
    let lead = g.coefficients[n].norm();
    let mut best: f64 = 0.0;
    for k in 0..n {
        let mut ratio = g.coefficients[k].norm() / lead;
        if k == 0 {
            ratio /= 2.0;
        }
        best = best.max(ratio.powf(1.0 / (n - k) as f64));
    }
    2.0 * best
}

/// The unique positive root of `|c_n| σ^n = Σ_{k<n} |c_k| σ^k`, to width `tol`.
///
/// Bracketed by `[0, fujiwara_expr(g)]`. Returns 0 when every lower
/// coefficient vanishes.
pub fn fujiwara_root(g: &UnivariatePolynomial, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let n = g.degree();
    let lead = g.coefficients[n].norm();
    let ratios: Vec<f64> = g.coefficients[..n]
        .iter()
        .map(|c| c.norm() / lead)
        .collect();
    if ratios.iter().all(|&r| r == 0.0) {
        return Ok(0.0);
    }
    let hi = fujiwara_expr(g);
    // Σ_{k<n} |c_k/c_n| σ^{k−n} − 1, decreasing on (0, ∞).
    let h = |s: f64| {
        ratios
            .iter()
            .enumerate()
            .map(|(k, r)| r * s.powi(k as i32 - n as i32))
            .sum::<f64>()
            - 1.0
    };
    if h(hi) >= 0.0 {
        return Ok(hi);
    }
    Ok(bisect_decreasing(h, 0.0, hi, 0.0, tol).root)
}
