//! File format, raster rendering and command-line surface for `amoeba-core`.

// `!(x < y)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod format;
pub mod render;
