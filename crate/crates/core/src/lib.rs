//! Numerical laboratory for a relativistic clock whose proper time is a
//! dynamical variable conjugate to its rest energy.
//!
//! * [`gedanken`] - uncertainty bookkeeping for spring and electric-field weighing.
//! * [`classical`] - constrained Hamiltonian dynamics, Poisson and Dirac brackets.
//! * [`quantum`] - momentum-space clock states, the proper-time operator and the
//!   growth of its variance under `H = sqrt(E^2 + c^2 p^2)`.
//! * [`scenario`] - config-driven runs that write CSV and self-check.
//!
//! See `examples/` for one runnable program per capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod gedanken;
pub mod grid;
pub mod quantum;
pub mod scenario;
pub mod spectral;
pub mod units;

pub use error::{Error, Result};
pub use grid::{trapezoid_norm_squared, ComplexField1D, ComplexField2D, UniformGrid};
pub use units::{convert_units, Dimension, Quantity, UnitContext, UnitSystem};
