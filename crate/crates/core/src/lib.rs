//! Scalar conservation laws with a discontinuous flux at `x = 0`.

// `!(x > 0.0)` is used on purpose throughout: it rejects NaN along with the
// out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod flux;
pub mod pvar;
pub mod roots;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
