//! Certified outer approximations of amoebas of exponential sums.
//!
//! An exponential sum `f(z) = Σ c_k exp(⟨λ_k, z⟩)` has an amoeba (the real
//! parts of its zeros) and an Archimedean tropical variety (the corner locus
//! of `max_k log|c_k| + ⟨λ_k, x⟩`). This crate measures how far the two can
//! drift apart:
//!
//! - [`expsum`]: the data model and elementary evaluations.
//! - [`charsum`]: the characteristic sum `Ξ_ι(δ)`, its root and the
//!   support-dependent distance bound.
//! - [`cert`]: distance to the tropical variety, lopsidedness and
//!   point certificates, plus the converse witness construction.
//! - [`lattice`]: universal degree bounds, truncated lattice sums with
//!   rigorous tails, the honeycomb model and the snapping construction.
//! - [`oracles`]: brute-force verifiers (polynomial roots, fiber minima,
//!   classical univariate root bounds).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod bisect;
pub mod cert;
pub mod charsum;
mod error;
pub mod expsum;
pub mod lattice;
pub mod oracles;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use cert::{Certificate, Status};
pub use charsum::{DeltaBound, DistanceProfile, RootResult};
pub use expsum::{Dominant, ExponentialSum, SupportSet};
pub use lattice::{HoneycombModel, LatticeSumResult};
pub use oracles::UnivariatePolynomial;
