//! Exact computations around the vanishing of Bauer–Furuta invariants under
//! involutions on spin 4-manifolds.
//!
//! - [`lattice`]: forms, involutions, Tate dimensions, realization conditions.
//! - [`indexthy`]: equivariant spin indices and fixed-point sign sums.
//! - [`bredon`]: representation tables, stable range, top-degree cohomology.
//! - [`vanishing`]: the vanishing criteria and the nonsmoothability verdict.
//! - [`realization`]: framed links and achievable sign sums.

pub mod bredon;
pub mod error;
pub mod indexthy;
pub mod lattice;
pub mod matrix;
pub mod realization;
pub mod serial;
pub mod snf;
pub mod vanishing;

pub use error::{Error, Result};
pub use matrix::IntMatrix;
