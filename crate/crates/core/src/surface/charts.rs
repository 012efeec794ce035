//! Built-in charts.
//!
//! Both tables are the charts dual to the built-in adapted tracks, with the
//! trigon regions removed. A test in the track module re-derives them.

use super::chart::Triangulation;

/// Sphere with five punctures. Triangles 4 and 5 are self-folded.
pub const S05_SIDES: [[usize; 3]; 6] = [[0, 1, 2], [2, 0, 3], [4, 5, 6], [6, 4, 3], [7, 7, 1], [8, 8, 5]];

/// Torus with two punctures. Triangle 3 is self-folded.
pub const S12_SIDES: [[usize; 3]; 4] = [[0, 1, 2], [2, 0, 3], [4, 1, 3], [5, 5, 4]];

pub fn s05() -> Triangulation {
    Triangulation::from_sides("s05", S05_SIDES.to_vec()).expect("built-in chart")
}

pub fn s12() -> Triangulation {
    Triangulation::from_sides("s12", S12_SIDES.to_vec()).expect("built-in chart")
}
