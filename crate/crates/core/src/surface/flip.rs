//! Edge flips of a chart and the induced change of normal coordinates.
//!
//! Intersection numbers and filling are invariant under change of chart, so
//! a pair of long curves can be compared after flipping to a chart where
//! they are short.

use super::chart::{dart_side, dart_triangle, Triangulation};
use super::normal::{validate_u32, NormalCurve};
use super::SurfaceError;

/// The chart with edge `e` replaced by the other diagonal of its
/// quadrilateral. The new diagonal keeps the label `e`.
pub fn flip_edge(chart: &Triangulation, e: usize) -> Result<Triangulation, SurfaceError> {
    let [d0, d1] = chart.edge_darts(e);
    let (t, u) = (dart_triangle(d0), dart_triangle(d1));
    if t == u {
        return Err(SurfaceError::BadChart(format!("edge {e} bounds a single triangle")));
    }
    let rot = |tri: usize, i: usize| {
        let s = chart.sides()[tri];
        [s[i], s[(i + 1) % 3], s[(i + 2) % 3]]
    };
    // [e, x1, x2] and [e, y1, y2]: the quadrilateral reads y1 y2 x1 x2
    let [_, x1, x2] = rot(t, dart_side(d0));
    let [_, y1, y2] = rot(u, dart_side(d1));
    let mut sides = chart.sides().to_vec();
    sides[t] = [e, y2, x1];
    sides[u] = [e, x2, y1];
    Triangulation::from_sides(chart.name(), sides)
}

/// Coordinates of `v` after flipping `e`: the new diagonal meets the curve
/// `max(x1 + y1, x2 + y2) - e` times.
pub fn flip_coords(chart: &Triangulation, e: usize, v: &[u32]) -> Vec<u32> {
    let [d0, d1] = chart.edge_darts(e);
    let side = |d: usize, k: usize| {
        let s = chart.sides()[dart_triangle(d)];
        s[(dart_side(d) + k) % 3]
    };
    let (x1, x2, y1, y2) = (side(d0, 1), side(d0, 2), side(d1, 1), side(d1, 2));
    let mut w = v.to_vec();
    w[e] = (v[x1] + v[y1]).max(v[x2] + v[y2]) - v[e];
    w
}

/// Curves moved to a chart where they are short, with the flips that got
/// there.
#[derive(Clone, Debug)]
pub struct Shortened {
    /// `charts[0]` is the original chart, `charts[k + 1]` follows flip `k`.
    charts: Vec<Triangulation>,
    flips: Vec<usize>,
    pub curves: Vec<NormalCurve>,
}

impl Shortened {
    pub fn chart(&self) -> &Triangulation {
        self.charts.last().expect("at least the original chart")
    }

    /// Coordinates on the original chart of a curve given on the short one.
    pub fn pull_back(&self, c: &NormalCurve) -> Result<NormalCurve, SurfaceError> {
        let mut v = c.coords().to_vec();
        for (k, &e) in self.flips.iter().enumerate().rev() {
            v = flip_coords(&self.charts[k + 1], e, &v);
        }
        validate_u32(&self.charts[0], v)
    }
}

/// Flips greedily while the total weight of `curves` drops.
pub fn shorten(chart: &Triangulation, curves: &[NormalCurve]) -> Result<Shortened, SurfaceError> {
    let mut charts = vec![chart.clone()];
    let mut flips = Vec::new();
    let mut vs: Vec<Vec<u32>> = curves.iter().map(|c| c.coords().to_vec()).collect();
    let total = |vs: &[Vec<u32>]| -> u64 { vs.iter().flatten().map(|&x| u64::from(x)).sum() };
    loop {
        let ch = charts.last().expect("nonempty");
        let now = total(&vs);
        let mut best: Option<(u64, usize, Vec<Vec<u32>>)> = None;
        for e in 0..ch.n_edges() {
            let [d0, d1] = ch.edge_darts(e);
            if dart_triangle(d0) == dart_triangle(d1) {
                continue;
            }
            let ws: Vec<Vec<u32>> = vs.iter().map(|v| flip_coords(ch, e, v)).collect();
            let t = total(&ws);
            if t < now && best.as_ref().is_none_or(|b| t < b.0) {
                best = Some((t, e, ws));
            }
        }
        match best {
            Some((_, e, ws)) => {
                let next = flip_edge(ch, e)?;
                charts.push(next);
                flips.push(e);
                vs = ws;
            }
            None => break,
        }
    }
    let ch = charts.last().expect("nonempty");
    let curves = vs
        .into_iter()
        .map(|v| validate_u32(ch, v))
        .collect::<Result<_, _>>()?;
    Ok(Shortened { charts, flips, curves })
}

/// Whether `x` and `y` fill, decided on a chart where the pair is short.
pub fn pair_fills(chart: &Triangulation, x: &NormalCurve, y: &NormalCurve) -> Result<bool, SurfaceError> {
    let s = shorten(chart, &[x.clone(), y.clone()])?;
    super::overlay::fills(s.chart(), &s.curves[0], &s.curves[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{charts, enumerate_curves, intersection_number, overlay};

    #[test]
    fn flips_preserve_curves_and_intersections() {
        for chart in [charts::s05(), charts::s12()] {
            let cs = enumerate_curves(&chart, 2);
            for e in 0..chart.n_edges() {
                let Ok(f) = flip_edge(&chart, e) else { continue };
                assert_eq!(f.sig(), chart.sig());
                let moved: Vec<NormalCurve> = cs
                    .iter()
                    .map(|c| validate_u32(&f, flip_coords(&chart, e, c.coords())).unwrap())
                    .collect();
                for i in 0..cs.len() {
                    for j in i + 1..cs.len().min(i + 8) {
                        assert_eq!(
                            intersection_number(&chart, &cs[i], &cs[j]).unwrap(),
                            intersection_number(&f, &moved[i], &moved[j]).unwrap()
                        );
                    }
                }
                // flipping back restores the coordinates
                for (c, m) in cs.iter().zip(&moved) {
                    assert_eq!(flip_coords(&f, e, m.coords()), c.coords());
                }
            }
        }
    }

    #[test]
    fn shortening_preserves_filling() {
        let chart = charts::s05();
        let cs = enumerate_curves(&chart, 3);
        for i in (0..cs.len()).step_by(7) {
            for j in (i + 1..cs.len()).step_by(11) {
                let s = shorten(&chart, &[cs[i].clone(), cs[j].clone()]).unwrap();
                let m = &s.curves;
                assert!(m[0].weight() + m[1].weight() <= cs[i].weight() + cs[j].weight());
                assert_eq!(
                    overlay::fills(&chart, &cs[i], &cs[j]).unwrap(),
                    overlay::fills(s.chart(), &m[0], &m[1]).unwrap()
                );
                assert_eq!(s.pull_back(&m[0]).unwrap(), cs[i]);
                assert_eq!(s.pull_back(&m[1]).unwrap(), cs[j]);
            }
        }
    }
}
