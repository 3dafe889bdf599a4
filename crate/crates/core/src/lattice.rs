//! Universal distance bounds and the lattice constructions behind them.
//!
//! For integer supports the characteristic sum of any pivot is dominated by
//! the full lattice sum `S_d(δ) = Σ_{β ∈ Z^d \ 0} exp(−δ|β|)`. The root of
//! `S_d(δ) = 1` is therefore a bound valid for every polynomial exponential sum
//! in dimension `d`. Replacing the right hand side by 2 gives the variant for
//! pivots at vertices of the Newton polytope.

use alloc::vec;
use alloc::vec::Vec;

use crate::bisect::bisect_decreasing;
use crate::charsum::DistanceProfile;
use crate::expsum::{euclidean, SupportSet};
use crate::{Error, Result};

/// Largest sup-norm truncation radius [`lattice_sum`] will accept.
pub const DEFAULT_RADIUS_CAP: usize = 10_000;
/// Largest number of orthant points a single lattice sum may enumerate.
pub const MAX_ENUMERATION: f64 = 2e8;
/// Largest dimension accepted by [`ray_support`].
pub const RAY_DIMENSION_CAP: usize = 8;
/// Default δ-tolerance for the bisection solvers.
pub const DEFAULT_DELTA_TOL: f64 = 1e-9;

/// Truncation of a lattice sum kept far below the δ-tolerance of [`sharp_bound`].
const SHARP_TAIL_TOL: f64 = 1e-14;

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(())
}

/// `d · log(2 + √3)`, valid for every polynomial exponential sum in dimension `d`.
pub fn polynomial_bound(d: usize) -> Result<f64> {
    check_dim(d)?;
    Ok(d as f64 * (2.0 + 3f64.sqrt()).ln())
}

/// `(d √d / μ) · 2 log(2 + √3)`, valid for every exponential sum with scaling parameter `μ`.
pub fn general_bound(d: usize, mu: f64) -> Result<f64> {
    check_dim(d)?;
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidArgument("mu must be positive"));
    }
    let d = d as f64;
    Ok(d * d.sqrt() / mu * 2.0 * (2.0 + 3f64.sqrt()).ln())
}

/// `log((√3 + √2) / (√3 − √2))`, the planar bound obtained from `|β| ≥ max(β_1, β_2)`.
pub fn improved_bound_2d() -> f64 {
    let (a, b) = (3f64.sqrt(), 2f64.sqrt());
    ((a + b) / (a - b)).ln()
}

/// `A − √(A² − 2^{1/d})` with `A = (3 + 2^{1/d}) / 2`; tends to `1/(2 + √3)`.
pub fn vertex_bound_inner(d: usize) -> Result<f64> {
    check_dim(d)?;
    let root2 = 2f64.powf(1.0 / d as f64);
    let a = (3.0 + root2) / 2.0;
    Ok(a - (a * a - root2).sqrt())
}

/// Closed-form bound for pivots at vertices of the Newton polytope:
/// `−d · log(A − √(A² − 2^{1/d}))`.
pub fn vertex_bound(d: usize) -> Result<f64> {
    Ok(-(d as f64) * vertex_bound_inner(d)?.ln())
}

/// A truncated lattice sum with a proven enclosure of the full sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSumResult {
    /// `Σ_{0 < ‖β‖∞ ≤ R} exp(−δ|β|)`.
    pub value: f64,
    /// Upper bound on the omitted remainder.
    pub tail_bound: f64,
    pub radius: usize,
    pub delta: f64,
}

impl LatticeSumResult {
    /// Midpoint of `[value, value + tail_bound]`.
    pub fn estimate(&self) -> f64 {
        self.value + 0.5 * self.tail_bound
    }
}

/// Number of integer points with sup-norm exactly `r` in `Z^d`.
pub fn shell_count(d: usize, r: usize) -> f64 {
    let r = r as f64;
    (2.0 * r + 1.0).powi(d as i32) - (2.0 * r - 1.0).powi(d as i32)
}

/// Upper bound on `Σ_{r > R} N_d(r) exp(−δ r)`.
///
/// Since `N_d(r) ≤ 2d (2r+1)^{d−1}` and the ratio of consecutive majorant
/// terms decreases in `r`, the exact terms are summed until that ratio drops
/// below one and the rest is closed with a geometric series.
pub fn shell_tail_bound(d: usize, delta: f64, radius: usize) -> f64 {
    let dm1 = (d - 1) as i32;
    let mut sum = 0.0;
    let mut r = radius + 1;
    loop {
        let rf = r as f64;
        let ratio = ((2.0 * rf + 3.0) / (2.0 * rf + 1.0)).powi(dm1) * (-delta).exp();
        if ratio < 1.0 {
            let majorant = 2.0 * d as f64 * (2.0 * rf + 1.0).powi(dm1) * (-delta * rf).exp();
            return sum + majorant / (1.0 - ratio);
        }
        sum += shell_count(d, r) * (-delta * rf).exp();
        r += 1;
    }
}

/// [`lattice_sum_with_cap`] with [`DEFAULT_RADIUS_CAP`].
pub fn lattice_sum(d: usize, delta: f64, tail_tol: f64) -> Result<LatticeSumResult> {
    lattice_sum_with_cap(d, delta, tail_tol, DEFAULT_RADIUS_CAP)
}

/// Truncated `Σ_{β ∈ Z^d \ 0} exp(−δ|β|)` over sup-norm shells `1..=R`, with `R`
/// the smallest radius whose tail bound is below `tail_tol`.
pub fn lattice_sum_with_cap(
    d: usize,
    delta: f64,
    tail_tol: f64,
    radius_cap: usize,
) -> Result<LatticeSumResult> {
    check_dim(d)?;
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    if !(tail_tol > 0.0) {
        return Err(Error::InvalidArgument("tail tolerance must be positive"));
    }
    let mut radius = 1;
    let mut tail_bound = shell_tail_bound(d, delta, radius);
    while tail_bound >= tail_tol {
        radius += 1;
        if radius > radius_cap {
            return Err(Error::TruncationCap { cap: radius_cap });
        }
        tail_bound = shell_tail_bound(d, delta, radius);
    }
    if ((radius + 1) as f64).powi(d as i32) > MAX_ENUMERATION {
        return Err(Error::TruncationCap { cap: radius_cap });
    }
    let shells = shell_sums(d, delta, radius);
    let value = shells.iter().sum();
    Ok(LatticeSumResult {
        value,
        tail_bound,
        radius,
        delta,
    })
}

// Per-shell partial sums, index = sup-norm. Walks the closed nonnegative orthant
// and weights each point by the 2^{#nonzero} sign patterns it stands for.
fn shell_sums(d: usize, delta: f64, radius: usize) -> Vec<f64> {
    let mut shells = vec![0.0; radius + 1];
    let mut coords = vec![0usize; d];
    loop {
        // odometer step
        let mut i = 0;
        while i < d {
            coords[i] += 1;
            if coords[i] <= radius {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == d {
            break;
        }
        let mut norm2 = 0.0;
        let mut sup = 0;
        let mut nonzero = 0;
        for &c in &coords {
            norm2 += (c * c) as f64;
            sup = sup.max(c);
            nonzero += (c != 0) as i32;
        }
        shells[sup] += 2f64.powi(nonzero) * (-delta * norm2.sqrt()).exp();
    }
    shells
}

/// Root in `δ` of `Σ_{β ≠ 0} exp(−δ|β|) = rhs`, accurate to `tol` in `δ`.
///
/// `rhs = 1` gives the sharp bound for polynomial exponential sums in
/// dimension `d`; `rhs = 2` the sharp bound for vertex pivots.
pub fn sharp_bound(d: usize, rhs: f64, tol: f64) -> Result<f64> {
    check_dim(d)?;
    if !(rhs > 0.0) || !rhs.is_finite() {
        return Err(Error::InvalidArgument("rhs must be positive"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    // The 2d coordinate rays alone sum to 2d·q/(1 − q), q = e^{−δ}; that equals rhs at lo.
    let lo = (1.0 + 2.0 * d as f64 / rhs).ln();
    let mut hi = polynomial_bound(d)? + 1.0;
    let mut failure = None;
    let mut g = |delta: f64| match lattice_sum(d, delta, SHARP_TAIL_TOL) {
        Ok(s) => s.estimate() - rhs,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    let b = bisect_decreasing(&mut g, lo, hi, 0.0, tol);
    match failure {
        Some(e) => Err(e),
        None => Ok(b.root),
    }
}

/// The linear map `T = (ε·𝟙 + I)/√2`, `ε = (√(1+d) − 1)/d`, whose image of `Z^d`
/// has minimal distance 1 and is the triangular (honeycomb) lattice for `d = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoneycombModel {
    pub dim: usize,
    pub epsilon: f64,
    /// Row-major, symmetric.
    pub matrix: Vec<Vec<f64>>,
    pub determinant: f64,
    pub spectral_value: f64,
}

impl HoneycombModel {
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `√(1+d)/√2`, the eigenvalue on the all-ones direction.
    pub fn expected_spectral_value(d: usize) -> f64 {
        ((1 + d) as f64).sqrt() / 2f64.sqrt()
    }

    /// `1/√2`, the eigenvalue on the sum-zero hyperplane (multiplicity `d − 1`).
    pub fn expected_minor_eigenvalue() -> f64 {
        1.0 / 2f64.sqrt()
    }

    /// Product of the eigenvalues, `√(1+d) / 2^{d/2}`.
    pub fn expected_determinant(d: usize) -> f64 {
        ((1 + d) as f64).sqrt() / 2f64.powf(d as f64 / 2.0)
    }
}

/// Builds `T` for dimension `d` and checks its spectrum, determinant and the
/// minimal distance of `T Z^d` over the sup-norm-2 neighbourhood of 0.
pub fn honeycomb_model(d: usize) -> Result<HoneycombModel> {
    check_dim(d)?;
    if d > RAY_DIMENSION_CAP {
        return Err(Error::InvalidArgument(
            "dimension too large for the neighbourhood scan",
        ));
    }
    let df = d as f64;
    let epsilon = ((1.0 + df).sqrt() - 1.0) / df;
    let s = 2f64.sqrt();
    let matrix: Vec<Vec<f64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (epsilon + if i == j { 1.0 } else { 0.0 }) / s)
                .collect()
        })
        .collect();
    let determinant = determinant(&matrix);
    let mut model = HoneycombModel {
        dim: d,
        epsilon,
        matrix,
        determinant,
        spectral_value: 0.0,
    };
    model.spectral_value = power_iteration(&model);

    const TOL: f64 = 1e-12;
    let major = HoneycombModel::expected_spectral_value(d);
    let minor = HoneycombModel::expected_minor_eigenvalue();
    if (model.determinant - HoneycombModel::expected_determinant(d)).abs() > TOL {
        return Err(Error::Invariant("honeycomb determinant"));
    }
    if (model.spectral_value - major).abs() > 1e-10 {
        return Err(Error::Invariant("honeycomb spectral value"));
    }
    let ones = vec![1.0; d];
    if model.apply(&ones).iter().any(|v| (v - major).abs() > TOL) {
        return Err(Error::Invariant("honeycomb all-ones eigenvector"));
    }
    for j in 1..d {
        let mut v = vec![0.0; d];
        v[0] = 1.0;
        v[j] = -1.0;
        let image = model.apply(&v);
        if image
            .iter()
            .zip(&v)
            .any(|(a, b)| (a - minor * b).abs() > TOL)
        {
            return Err(Error::Invariant("honeycomb sum-zero eigenspace"));
        }
    }
    let mu = lattice_neighbourhood(&model, 2)
        .into_iter()
        .map(|p| euclidean(&p, &vec![0.0; d]))
        .fold(f64::INFINITY, f64::min);
    if (mu - 1.0).abs() > TOL {
        return Err(Error::Invariant("honeycomb minimal distance"));
    }
    Ok(model)
}

/// Images `Tβ` of the nonzero `β ∈ Z^d` with `‖β‖∞ ≤ radius`.
pub fn lattice_neighbourhood(model: &HoneycombModel, radius: i64) -> Vec<Vec<f64>> {
    let d = model.dim;
    let mut out = Vec::new();
    let mut beta = vec![-radius; d];
    loop {
        if beta.iter().any(|&b| b != 0) {
            let v: Vec<f64> = beta.iter().map(|&b| b as f64).collect();
            out.push(model.apply(&v));
        }
        let mut i = 0;
        while i < d {
            beta[i] += 1;
            if beta[i] <= radius {
                break;
            }
            beta[i] = -radius;
            i += 1;
        }
        if i == d {
            return out;
        }
    }
}

fn determinant(matrix: &[Vec<f64>]) -> f64 {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= factor * p;
            }
        }
    }
    det
}

// T is symmetric positive definite, so the dominant eigenvalue is the spectral value.
fn power_iteration(model: &HoneycombModel) -> f64 {
    let d = model.dim;
    let mut v: Vec<f64> = (0..d).map(|i| 1.0 + 0.1 * i as f64).collect();
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w = model.apply(&v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let next = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.into_iter().map(|x| x / norm).collect();
        if (next - lambda).abs() < 1e-15 {
            return next;
        }
        lambda = next;
    }
    lambda
}

/// Root of `6e^{−δ} + 6e^{−√3 δ} = 1` plus the neighbour counts that justify it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoneycombSharp {
    pub root: f64,
    /// `6e^{−root} + 6e^{−√3 root} − 1`.
    pub residual: f64,
    /// Points of `TZ²` at distance 1 from the origin.
    pub unit_neighbours: usize,
    /// Points of `TZ²` at distance `√3` from the origin.
    pub sqrt3_neighbours: usize,
}

pub fn honeycomb_sharp_2d(tol: f64) -> Result<HoneycombSharp> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let model = honeycomb_model(2)?;
    let s3 = 3f64.sqrt();
    let mut unit_neighbours = 0;
    let mut sqrt3_neighbours = 0;
    for p in lattice_neighbourhood(&model, 3) {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        if (r - 1.0).abs() <= 1e-9 {
            unit_neighbours += 1;
        } else if (r - s3).abs() <= 1e-9 {
            sqrt3_neighbours += 1;
        }
    }
    if (unit_neighbours, sqrt3_neighbours) != (6, 6) {
        return Err(Error::Invariant("honeycomb neighbour shells"));
    }
    let g = |t: f64| 6.0 * (-t).exp() + 6.0 * (-s3 * t).exp() - 1.0;
    let b = bisect_decreasing(g, 6f64.ln(), 12f64.ln(), tol, 0.0);
    Ok(HoneycombSharp {
        root: b.root,
        residual: b.value,
        unit_neighbours,
        sqrt3_neighbours,
    })
}

/// The origin followed by the first `m` integer points on each ray `j·s`,
/// `s ∈ {−1, 0, 1}^d \ 0`.
pub fn ray_support(d: usize, m: usize) -> Result<SupportSet> {
    check_dim(d)?;
    if d > RAY_DIMENSION_CAP {
        return Err(Error::InvalidArgument("ray construction limited to d <= 8"));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("ray depth must be positive"));
    }
    let directions = sign_vectors(d);
    let mut points = Vec::with_capacity(1 + m * directions.len());
    points.push(vec![0.0; d]);
    for s in &directions {
        for j in 1..=m {
            points.push(s.iter().map(|&c| (c * j as i64) as f64).collect());
        }
    }
    SupportSet::new(d, points)
}

// Nonzero vectors of {−1, 0, 1}^d in lexicographic order.
fn sign_vectors(d: usize) -> Vec<Vec<i64>> {
    let total = 3usize.pow(d as u32);
    (0..total)
        .map(|mut code| {
            (0..d)
                .map(|_| {
                    let digit = (code % 3) as i64 - 1;
                    code /= 3;
                    digit
                })
                .collect::<Vec<i64>>()
        })
        .filter(|s| s.iter().any(|&c| c != 0))
        .collect()
}

/// `Ξ_0(δ)` for [`ray_support`]`(d, m)` pivoted at the origin.
///
/// A value above 1 means a sum with this support can have amoeba points at
/// distance `δ` from its tropical variety, so the sharp bound exceeds `δ`.
pub fn lower_bound_check(d: usize, delta: f64, m: usize) -> Result<f64> {
    let support = ray_support(d, m)?;
    DistanceProfile::from_support(&support, 0)?.xi(delta)
}

/// A support moved onto the grid `Γ = λ_ι + (μ / 2√d)·Z^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SnappedSupport {
    pub support: SupportSet,
    pub pivot: usize,
    /// Grid spacing `μ / (2√d)`.
    pub spacing: f64,
    pub mu: f64,
    /// Integer coordinates of `λ̂_k − λ_ι` in units of `spacing`.
    pub lattice_coords: Vec<Vec<i64>>,
}

/// Replaces each `λ_k` by a grid point no farther from `λ_ι` and within `μ/2`
/// of `λ_k`.
///
/// Candidates are the grid points of the sub-cube of side `μ/(2√d)` at
/// `λ_k − λ_ι` facing the pivot (zero coordinates face the positive
/// direction). The admissible candidate of least norm wins, ties broken
/// lexicographically on its integer coordinates.
pub fn snap_support(support: &SupportSet, pivot: usize) -> Result<SnappedSupport> {
    snap_support_with_mu(support, pivot, support.mu()?)
}

/// [`snap_support`] on the grid built from an explicit scale `mu` instead of
/// `μ(Λ)`. Distinctness of the snapped points is only guaranteed for
/// `mu ≤ μ(Λ)`; a collision is reported as [`Error::SnapCollision`].
pub fn snap_support_with_mu(support: &SupportSet, pivot: usize, mu: f64) -> Result<SnappedSupport> {
    support.check_index(pivot)?;
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidArgument("mu must be positive"));
    }
    let d = support.dim();
    let spacing = mu / (2.0 * (d as f64).sqrt());
    let base = support.exponent(pivot);
    let mut exponents = Vec::with_capacity(support.len());
    let mut lattice_coords = Vec::with_capacity(support.len());
    for k in 0..support.len() {
        if k == pivot {
            exponents.push(base.to_vec());
            lattice_coords.push(vec![0; d]);
            continue;
        }
        let v: Vec<f64> = support
            .exponent(k)
            .iter()
            .zip(base)
            .map(|(a, b)| a - b)
            .collect();
        if let Some(g) = grid_coords(&v, spacing) {
            exponents.push(support.exponent(k).to_vec());
            lattice_coords.push(g);
            continue;
        }
        let g = snap_vector(&v, spacing, mu)?;
        exponents.push(
            base.iter()
                .zip(&g)
                .map(|(b, &gi)| b + gi as f64 * spacing)
                .collect(),
        );
        lattice_coords.push(g);
    }
    for j in 0..lattice_coords.len() {
        for k in j + 1..lattice_coords.len() {
            if lattice_coords[j] == lattice_coords[k] {
                return Err(Error::SnapCollision(j, k));
            }
        }
    }
    let support = SupportSet::new(d, exponents).map_err(|e| match e {
        Error::DuplicateExponent(j, k) => Error::SnapCollision(j, k),
        other => other,
    })?;
    Ok(SnappedSupport {
        support,
        pivot,
        spacing,
        mu,
        lattice_coords,
    })
}

fn grid_coords(v: &[f64], spacing: f64) -> Option<Vec<i64>> {
    v.iter()
        .map(|&x| {
            let q = x / spacing;
            let r = q.round();
            ((q - r).abs() <= 1e-12 * r.abs().max(1.0)).then_some(r as i64)
        })
        .collect()
}

fn snap_vector(v: &[f64], spacing: f64, mu: f64) -> Result<Vec<i64>> {
    // Per-coordinate grid indices inside the closed interval between v_i and
    // v_i − sgn(v_i)·spacing.
    let options: Vec<Vec<i64>> = v
        .iter()
        .map(|&x| {
            let toward = if x > 0.0 { -1.0 } else { 1.0 };
            let (a, b) = (x, x + toward * spacing);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let first = (lo / spacing).ceil() as i64;
            let last = (hi / spacing).floor() as i64;
            (first..=last).collect()
        })
        .collect();
    let norm_v = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let slack = 1e-12 * norm_v.max(mu);
    let mut best: Option<(f64, Vec<i64>)> = None;
    let mut pick = vec![0usize; v.len()];
    loop {
        let g: Vec<i64> = pick.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        let p: Vec<f64> = g.iter().map(|&gi| gi as f64 * spacing).collect();
        let norm_p = p.iter().map(|x| x * x).sum::<f64>().sqrt();
        let shift = euclidean(&p, v);
        if norm_p <= norm_v + slack && shift <= 0.5 * mu + slack {
            let better = match &best {
                None => true,
                Some((n, bg)) => norm_p < *n || (norm_p == *n && g < *bg),
            };
            if better {
                best = Some((norm_p, g));
            }
        }
        let mut i = 0;
        while i < pick.len() {
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }
    best.map(|(_, g)| g)
        .ok_or(Error::Invariant("no admissible grid point in the quadrant"))
}
