//! Punctured surfaces with ideal triangulations, curves in normal
//! coordinates, intersection numbers and bounded enumeration.

mod chart;
pub mod charts;
mod enumerate;
mod flip;
mod intersect;
mod normal;
pub mod overlay;
mod surgery;

pub(crate) use chart::corner_labels;
pub use chart::{dart, dart_side, dart_triangle, ChartJson, SurfaceSig, Triangulation};
pub use enumerate::{enumerate_curves, random_curve};
pub use flip::{flip_coords, flip_edge, pair_fills, shorten, Shortened};
pub use intersect::{intersection_number, intersection_number_multi, intersection_of_walks};
pub use normal::{
    collect_coords, cyclic_reduce, disjoint, same_cyclic_walk, trace, trace_darts,
    validate_coords, CurveJson, MultiCurve, NormalCurve, TraceStep,
};
pub(crate) use normal::validate_u32;
pub use surgery::surgery_neighbours;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("closed surfaces are not supported")]
    Closed,
    #[error("S_{{{genus},{punctures}}} has complexity below 2")]
    TooSimple { genus: u32, punctures: u32 },
    #[error("malformed chart: {0}")]
    BadChart(String),
    #[error("zero vector is not a curve")]
    ZeroVector,
    #[error("a triangle has odd total weight")]
    ParityViolation,
    #[error("a corner arc count is negative")]
    CornerNegative,
    #[error("normal arcs form more than one component")]
    Disconnected,
    #[error("curve bounds a once-punctured disc")]
    Peripheral,
    #[error("vector has {found} entries, chart has {expected} edges")]
    MismatchedChart { expected: usize, found: usize },
    #[error("unknown surface '{0}'")]
    UnknownSurface(String),
}
