//! Numerical laboratory for curvature integrals on four-manifolds with cone edges.
//!
//! The crate evaluates closed-form chart metrics, decomposes their curvature,
//! integrates Gauss–Bonnet and signature densities over cohomogeneity-one and
//! axisymmetric domains, and checks the results against exact topological
//! predictions.

// Tensor code indexes several arrays with the same loop variables, and the
// negated float comparisons below deliberately reject NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

mod linalg;

pub mod geometry_catalog;
pub mod metric_engine;
pub mod quadrature;
pub mod tensor_core;
pub mod topology;

pub use linalg::{Mat3, Mat4, Tensor4, Vec4};
