//! Normal coordinates, canonical traces and multicurves.
//!
//! Inside a triangle with side weights `(x0, x1, x2)` the corner at `v_i`
//! carries `(x_{i-1} + x_i - x_{i+1}) / 2` arcs. Arcs are nested by corner:
//! along side `i`, counted from `v_i`, the first points belong to corner
//! `v_i` (innermost first) and the rest to corner `v_{i+1}` (innermost last).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::chart::{dart, dart_side, dart_triangle, Triangulation};
use super::SurfaceError;

/// An essential, non-peripheral simple closed curve in normal position.
/// The coordinate vector is the canonical key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalCurve {
    coords: Vec<u32>,
}

impl NormalCurve {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn weight(&self) -> u64 {
        self.coords.iter().map(|&x| x as u64).sum()
    }

    pub fn max_coord(&self) -> u32 {
        self.coords.iter().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self, chart: &Triangulation) -> CurveJson {
        CurveJson {
            chart: chart.name().to_string(),
            coords: self.coords.iter().map(|&x| x as i64).collect(),
        }
    }
}

/// Serialized curve: `{chart: name, coords:[int...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub chart: String,
    pub coords: Vec<i64>,
}

/// One step of a traced curve: the arc inside `triangle` that enters through
/// `entry` and leaves through `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub triangle: usize,
    pub entry: usize,
    pub exit: usize,
}

impl TraceStep {
    /// Corner of the triangle cut off by this arc.
    pub fn corner(&self) -> usize {
        // sides i-1 and i meet at v_i
        if (self.entry + 1) % 3 == self.exit {
            self.exit
        } else {
            self.entry
        }
    }
}

/// A point where a traced curve crosses an edge, recorded with the dart it
/// leaves through and its index along the edge in the reference frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Crossing {
    pub dart: usize,
    pub index: u32,
}

fn check_triangles(chart: &Triangulation, v: &[u32]) -> Result<(), SurfaceError> {
    for tri in chart.sides() {
        let (x, y, z) = (v[tri[0]], v[tri[1]], v[tri[2]]);
        if (x + y + z) % 2 != 0 {
            return Err(SurfaceError::ParityViolation);
        }
    }
    for tri in chart.sides() {
        let (x, y, z) = (v[tri[0]], v[tri[1]], v[tri[2]]);
        if x > y + z || y > x + z || z > x + y {
            return Err(SurfaceError::CornerNegative);
        }
    }
    Ok(())
}

#[inline]
fn corner_count(w: [u32; 3], i: usize) -> u32 {
    (w[(i + 2) % 3] + w[i] - w[(i + 1) % 3]) / 2
}

#[inline]
fn side_weights(chart: &Triangulation, v: &[u32], t: usize) -> [u32; 3] {
    let s = chart.sides()[t];
    [v[s[0]], v[s[1]], v[s[2]]]
}

/// Given a point entering triangle `t` through side `i` at position `p`
/// (counted from `v_i`), returns the exit side and position.
#[inline]
fn arc_exit(w: [u32; 3], i: usize, p: u32) -> (usize, u32) {
    let ci = corner_count(w, i);
    if p < ci {
        let prev = (i + 2) % 3;
        (prev, w[prev] - 1 - p)
    } else {
        let next = (i + 1) % 3;
        (next, w[i] - 1 - p)
    }
}

/// Position along the reference frame of the edge for a point at position
/// `p` counted from `v_i` on dart `d`.
#[inline]
fn to_reference(chart: &Triangulation, d: usize, p: u32, weight: u32) -> u32 {
    if chart.is_reference_dart(d) {
        p
    } else {
        weight - 1 - p
    }
}

/// Follows one component starting at the reference point `index` of edge
/// `e`, entering the first triangle of the edge. Calls `visit` on every
/// crossing, in order. Returns the number of crossings.
pub(crate) fn follow<F: FnMut(Crossing, TraceStep)>(
    chart: &Triangulation,
    v: &[u32],
    e: usize,
    index: u32,
    mut visit: F,
) -> usize {
    let start = chart.edge_darts(e)[0];
    let (mut t, mut i) = (dart_triangle(start), dart_side(start));
    let mut p = index;
    let mut n = 0;
    loop {
        let w = side_weights(chart, v, t);
        let (j, q) = arc_exit(w, i, p);
        let out = dart(t, j);
        let we = w[j];
        visit(
            Crossing {
                dart: out,
                index: to_reference(chart, out, q, we),
            },
            TraceStep {
                triangle: t,
                entry: i,
                exit: j,
            },
        );
        n += 1;
        let g = chart.glue(out);
        t = dart_triangle(g);
        i = dart_side(g);
        p = we - 1 - q;
        if t == dart_triangle(start) && i == dart_side(start) && p == index {
            return n;
        }
    }
}

/// Components of a normal multicurve, each as its coordinate vector, in a
/// deterministic order. Assumes the triangle conditions hold.
pub(crate) fn components(chart: &Triangulation, v: &[u32]) -> Vec<Vec<u32>> {
    let mut seen: Vec<Vec<bool>> = v.iter().map(|&x| vec![false; x as usize]).collect();
    let mut out = Vec::new();
    for e in 0..chart.n_edges() {
        for k in 0..v[e] {
            if seen[e][k as usize] {
                continue;
            }
            let mut c = vec![0u32; v.len()];
            follow(chart, v, e, k, |x, _| {
                let f = chart.edge(x.dart);
                seen[f][x.index as usize] = true;
                c[f] += 1;
            });
            out.push(c);
        }
    }
    out
}

/// Checks every invariant of a single curve.
pub fn validate_coords(chart: &Triangulation, v: &[i64]) -> Result<NormalCurve, SurfaceError> {
    if v.len() != chart.n_edges() {
        return Err(SurfaceError::MismatchedChart {
            expected: chart.n_edges(),
            found: v.len(),
        });
    }
    if v.iter().any(|&x| x < 0) {
        return Err(SurfaceError::CornerNegative);
    }
    if v.iter().all(|&x| x == 0) {
        return Err(SurfaceError::ZeroVector);
    }
    let v: Vec<u32> = v.iter().map(|&x| x as u32).collect();
    validate_u32(chart, v)
}

pub(crate) fn validate_u32(chart: &Triangulation, v: Vec<u32>) -> Result<NormalCurve, SurfaceError> {
    if v.len() != chart.n_edges() {
        return Err(SurfaceError::MismatchedChart {
            expected: chart.n_edges(),
            found: v.len(),
        });
    }
    if v.iter().all(|&x| x == 0) {
        return Err(SurfaceError::ZeroVector);
    }
    check_triangles(chart, &v)?;
    let total: u64 = v.iter().map(|&x| x as u64).sum();
    let e = v.iter().position(|&x| x > 0).unwrap();
    let n = follow(chart, &v, e, 0, |_, _| {});
    if n as u64 != total {
        return Err(SurfaceError::Disconnected);
    }
    // normal coordinates are canonical, so a curve is peripheral exactly
    // when it equals the link of a puncture
    if (0..chart.n_vertices()).any(|p| chart.vertex_link(p) == v) {
        return Err(SurfaceError::Peripheral);
    }
    Ok(NormalCurve { coords: v })
}

/// Canonical cyclic trace: starts at the first crossing of the lowest
/// nonzero edge, entering its reference triangle.
pub fn trace(chart: &Triangulation, c: &NormalCurve) -> Vec<TraceStep> {
    let e = c.coords.iter().position(|&x| x > 0).expect("nonzero curve");
    let mut steps = Vec::with_capacity(c.weight() as usize);
    follow(chart, &c.coords, e, 0, |_, s| steps.push(s));
    steps
}

/// The dual-graph walk of a curve: the darts it leaves through, in order.
pub fn trace_darts(chart: &Triangulation, c: &NormalCurve) -> Vec<usize> {
    let e = c.coords.iter().position(|&x| x > 0).expect("nonzero curve");
    let mut darts = Vec::with_capacity(c.weight() as usize);
    follow(chart, &c.coords, e, 0, |x, _| darts.push(x.dart));
    darts
}

pub(crate) fn trace_crossings(chart: &Triangulation, c: &[u32]) -> Vec<Crossing> {
    let e = c.iter().position(|&x| x > 0).expect("nonzero curve");
    let mut xs = Vec::new();
    follow(chart, c, e, 0, |x, _| xs.push(x));
    xs
}

/// Edge-visit counts of a closed dual walk.
pub fn collect_coords(chart: &Triangulation, darts: &[usize]) -> Vec<u32> {
    let mut v = vec![0u32; chart.n_edges()];
    for &d in darts {
        v[chart.edge(d)] += 1;
    }
    v
}

/// Free cyclic reduction of a closed walk in the dual graph.
pub fn cyclic_reduce(chart: &Triangulation, darts: &[usize]) -> Vec<usize> {
    let mut stack: Vec<usize> = Vec::with_capacity(darts.len());
    for &d in darts {
        match stack.last() {
            Some(&top) if chart.glue(top) == d => {
                stack.pop();
            }
            _ => stack.push(d),
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && chart.glue(stack[hi - 1]) == stack[lo] {
        lo += 1;
        hi -= 1;
    }
    stack[lo..hi].to_vec()
}

/// Rotations-and-reversal equivalence of cyclic dart words.
pub fn same_cyclic_walk(chart: &Triangulation, a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let rev: Vec<usize> = b.iter().rev().map(|&d| chart.glue(d)).collect();
    let n = a.len();
    for cand in [b, &rev[..]] {
        for r in 0..n {
            if (0..n).all(|k| a[k] == cand[(k + r) % n]) {
                return true;
            }
        }
    }
    false
}

/// Weighted disjoint union of distinct curves.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MultiCurve {
    components: BTreeMap<NormalCurve, u64>,
}

impl MultiCurve {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(c: NormalCurve) -> Self {
        let mut m = Self::new();
        m.components.insert(c, 1);
        m
    }

    /// Adds `k` parallel copies of `c`. Disjointness from the existing
    /// components is the caller's responsibility; see [`MultiCurve::from_coords`].
    pub fn add(&mut self, c: NormalCurve, k: u64) {
        if k > 0 {
            *self.components.entry(c).or_insert(0) += k;
        }
    }

    /// Splits a normal multicurve vector into its components.
    pub fn from_coords(chart: &Triangulation, v: &[u32]) -> Result<Self, SurfaceError> {
        if v.len() != chart.n_edges() {
            return Err(SurfaceError::MismatchedChart {
                expected: chart.n_edges(),
                found: v.len(),
            });
        }
        check_triangles(chart, v)?;
        let mut m = Self::new();
        for c in components(chart, v) {
            let curve = validate_u32(chart, c)?;
            m.add(curve, 1);
        }
        Ok(m)
    }

    pub fn components(&self) -> impl Iterator<Item = (&NormalCurve, u64)> {
        self.components.iter().map(|(c, &k)| (c, k))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn coords(&self, n_edges: usize) -> Vec<u64> {
        let mut v = vec![0u64; n_edges];
        for (c, k) in self.components() {
            for (x, &y) in v.iter_mut().zip(c.coords()) {
                *x += k * y as u64;
            }
        }
        v
    }
}

impl From<NormalCurve> for MultiCurve {
    fn from(c: NormalCurve) -> Self {
        MultiCurve::single(c)
    }
}

/// True iff the two curves can be realized disjointly: the normal sum then
/// splits into exactly these two components.
pub fn disjoint(chart: &Triangulation, a: &NormalCurve, b: &NormalCurve) -> bool {
    if a == b {
        return true;
    }
    let sum: Vec<u32> = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
    if check_triangles(chart, &sum).is_err() {
        return false;
    }
    let total: u64 = a.weight() + b.weight();
    let e = sum.iter().position(|&x| x > 0).unwrap();
    // Trace from two different points until either both components are
    // accounted for or a component mismatches.
    let mut seen_total = 0u64;
    let mut seen: Vec<Vec<bool>> = sum.iter().map(|&x| vec![false; x as usize]).collect();
    let mut parts = 0;
    for f in e..sum.len() {
        for k in 0..sum[f] {
            if seen[f][k as usize] {
                continue;
            }
            parts += 1;
            if parts > 2 {
                return false;
            }
            let mut c = vec![0u32; sum.len()];
            let n = follow(chart, &sum, f, k, |x, _| {
                let g = chart.edge(x.dart);
                seen[g][x.index as usize] = true;
                c[g] += 1;
            });
            seen_total += n as u64;
            if c != a.coords && c != b.coords {
                return false;
            }
        }
    }
    parts == 2 && seen_total == total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::charts;

    #[test]
    fn zero_and_parity_rejected() {
        let ch = charts::s05();
        assert_eq!(validate_coords(&ch, &[0; 9]), Err(SurfaceError::ZeroVector));
        let mut v = vec![0i64; 9];
        v[0] = 1;
        assert_eq!(validate_coords(&ch, &v), Err(SurfaceError::ParityViolation));
    }

    #[test]
    fn vertex_links_are_peripheral() {
        for ch in [charts::s05(), charts::s12()] {
            for p in 0..ch.n_vertices() {
                let v: Vec<i64> = ch.vertex_link(p).iter().map(|&x| x as i64).collect();
                assert_eq!(validate_coords(&ch, &v), Err(SurfaceError::Peripheral));
            }
        }
    }

    #[test]
    fn doubled_curve_is_disconnected() {
        let ch = charts::s05();
        let c = super::super::enumerate::enumerate_curves(&ch, 2)[0].clone();
        let v: Vec<i64> = c.coords().iter().map(|&x| 2 * x as i64).collect();
        assert_eq!(validate_coords(&ch, &v), Err(SurfaceError::Disconnected));
    }

    #[test]
    fn trace_visits_match_coords_and_reduce_trivially() {
        let ch = charts::s05();
        for c in super::super::enumerate::enumerate_curves(&ch, 2) {
            let darts = trace_darts(&ch, &c);
            assert_eq!(collect_coords(&ch, &darts), c.coords());
            assert_eq!(cyclic_reduce(&ch, &darts), darts);
            assert_eq!(trace(&ch, &c), trace(&ch, &c));
        }
    }
}
