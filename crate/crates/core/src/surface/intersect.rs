//! Geometric intersection numbers by linking of common segments.
//!
//! The dual graph of an ideal triangulation is a trivalent ribbon graph and a
//! spine of the surface; a curve in normal position is a cyclically reduced
//! closed walk on it. Two such walks cross essentially exactly once along
//! each maximal common segment whose ends leave the segment on opposite
//! sides, and every pair of walks through a trivalent vertex shares an edge
//! in one direction or the other, so no other crossings exist.

use super::chart::Triangulation;
use super::normal::{trace_darts, MultiCurve, NormalCurve};
use super::SurfaceError;

/// True iff `q` directly follows `p` in the counterclockwise order of the
/// three sides at a dual vertex.
#[inline]
fn ccw_next(p: usize, q: usize) -> bool {
    q == (p + 1) % 3
}

fn linked_segments(chart: &Triangulation, a: &[usize], b: &[usize]) -> u64 {
    let (n, m) = (a.len(), b.len());
    let mut count = 0u64;
    for k in 0..n {
        let ak = a[k];
        let ap = a[(k + n - 1) % n];
        for l in 0..m {
            if b[l] != ak || b[(l + m - 1) % m] == ap {
                continue;
            }
            let s_x = ak % 3;
            let in_a = chart.glue(ap) % 3;
            let in_b = chart.glue(b[(l + m - 1) % m]) % 3;
            let above_start = ccw_next(s_x, in_a);
            debug_assert!(in_a != in_b && in_a != s_x && in_b != s_x);
            let mut r = 1;
            while r < n + m && a[(k + r) % n] == b[(l + r) % m] {
                r += 1;
            }
            if r >= n + m {
                // identical cyclic words never diverge
                continue;
            }
            let last = a[(k + r - 1) % n];
            let t_y = chart.glue(last) % 3;
            let out_a = a[(k + r) % n] % 3;
            let out_b = b[(l + r) % m] % 3;
            let above_end = ccw_next(t_y, out_b);
            debug_assert!(out_a != out_b && out_a != t_y && out_b != t_y);
            if above_start != above_end {
                count += 1;
            }
        }
    }
    count
}

/// Intersection count of two cyclically reduced closed walks in the dual
/// graph, as dart sequences.
pub fn intersection_of_walks(chart: &Triangulation, a: &[usize], b: &[usize]) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let b_inv: Vec<usize> = b.iter().rev().map(|&d| chart.glue(d)).collect();
    linked_segments(chart, a, b) + linked_segments(chart, a, &b_inv)
}

fn check_len(chart: &Triangulation, c: &NormalCurve) -> Result<(), SurfaceError> {
    if c.coords().len() != chart.n_edges() {
        return Err(SurfaceError::MismatchedChart {
            expected: chart.n_edges(),
            found: c.coords().len(),
        });
    }
    Ok(())
}

/// Geometric intersection number of two curves.
pub fn intersection_number(
    chart: &Triangulation,
    a: &NormalCurve,
    b: &NormalCurve,
) -> Result<u64, SurfaceError> {
    check_len(chart, a)?;
    check_len(chart, b)?;
    if a == b {
        return Ok(0);
    }
    let wa = trace_darts(chart, a);
    let wb = trace_darts(chart, b);
    Ok(intersection_of_walks(chart, &wa, &wb))
}

/// Bilinear extension to weighted multicurves.
pub fn intersection_number_multi(
    chart: &Triangulation,
    a: &MultiCurve,
    b: &MultiCurve,
) -> Result<u64, SurfaceError> {
    let mut total = 0;
    for (x, kx) in a.components() {
        for (y, ky) in b.components() {
            total += kx * ky * intersection_number(chart, x, y)?;
        }
    }
    Ok(total)
}
