//! Exact train tracks, curves in normal coordinates and curve-graph
//! experiments on punctured surfaces.

pub mod cone;
pub mod curvegraph;
pub mod scalar;
pub mod splitting;
pub mod surface;
pub mod traintrack;
pub mod vertexcycles;

pub use scalar::{Exact, ExactInt, Rational};

/// Default integer scalar for measures and matrices.
pub type Integer = i64;
