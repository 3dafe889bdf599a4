//! Bisection for monotone decreasing functions.

/// Outcome of a bisection run on a decreasing function `g` with `g(lo) ≥ 0 ≥ g(hi)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bisection {
    pub root: f64,
    pub value: f64,
    pub iterations: usize,
}

pub(crate) const MAX_ITERATIONS: usize = 200;

/// Stops when `|g(mid)| ≤ residual_tol`, when the bracket is narrower than
/// `width_tol`, or after [`MAX_ITERATIONS`] halvings.
pub(crate) fn bisect_decreasing<G>(
    mut g: G,
    mut lo: f64,
    mut hi: f64,
    residual_tol: f64,
    width_tol: f64,
) -> Bisection
where
    G: FnMut(f64) -> f64,
{
    let mut mid = 0.5 * (lo + hi);
    let mut value = g(mid);
    let mut iterations = 1;
    while iterations < MAX_ITERATIONS {
        if value.abs() <= residual_tol || hi - lo <= width_tol {
            break;
        }
        if value > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let next = 0.5 * (lo + hi);
        if next == mid {
            break;
        }
        mid = next;
        value = g(mid);
        iterations += 1;
    }
    Bisection {
        root: mid,
        value,
        iterations,
    }
}
