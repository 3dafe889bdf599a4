use alloc::vec::Vec;
use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("empty term list")]
    Empty,
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value in term {0}")]
    NonFinite(usize),
    #[error("duplicate exponent: terms {0} and {1}")]
    DuplicateExponent(usize, usize),
    #[error("zero coefficient in term {0}")]
    ZeroCoefficient(usize),
    #[error("coefficient count {coefficients} does not match exponent count {exponents}")]
    LengthMismatch {
        exponents: usize,
        coefficients: usize,
    },
    #[error("mu undefined: fewer than two exponents")]
    MuUndefined,
    #[error("single-term support: the tropical variety is empty")]
    SingleTerm,
    #[error("index {index} out of range for {len} terms")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("delta too small to truncate: radius would exceed {cap}")]
    TruncationCap { cap: usize },
    #[error("no witness: point certified outside (xi = {xi})")]
    NoWitness { xi: f64 },
    #[error("fiber oracle requires integer exponents")]
    NonPolynomial,
    #[error("root iteration did not converge after {iterations} steps")]
    NoConvergence {
        iterations: usize,
        best: Vec<Complex64>,
    },
    #[error("snapped points {0} and {1} coincide")]
    SnapCollision(usize, usize),
    #[error("invariant check failed: {0}")]
    Invariant(&'static str),
}
