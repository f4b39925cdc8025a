//! Numerical toolkit for Kähler curvature.
//!
//! * [`tensor`]: algebraic curvature tensors in a unitary frame, their
//!   scalar functionals, sphere extremizers and the skew normal form.
//! * [`profile`]: U(m)-invariant metrics on `C^m` given by a radial profile.
//! * [`comparison`]: comparison functions, radial Jacobi fields and the
//!   model-metric checks built on them.
//! * [`surface`]: curvature of the two-parameter blow-up surface metric.
//! * [`cli`]: the `kahler-lab` command-line front end.

// `!(x > 0.0)` is used on purpose to reject NaN; quadrature nodes are tabulated to full published precision
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod cli;
pub mod comparison;
pub mod error;
pub mod quadrature;
pub mod profile;
pub mod surface;
pub mod tensor;

pub use error::{Error, Result};
