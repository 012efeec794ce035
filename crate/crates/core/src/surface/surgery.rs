//! Curves disjoint from a given curve, obtained by surgery along arcs of the
//! triangulation's edges.

use std::collections::BTreeSet;

use super::chart::{dart, dart_side, dart_triangle, Triangulation};
use super::normal::{collect_coords, cyclic_reduce, trace_crossings, validate_u32, NormalCurve};

/// Curves disjoint from `c`: boundary curves of a regular neighbourhood of
/// `c` union an edge segment between consecutive crossings that leave the
/// segment on the same side, and band sums of `c` with a puncture along the
/// outermost segment of an edge. Sorted by weight, then coordinates.
pub fn surgery_neighbours(chart: &Triangulation, c: &NormalCurve) -> Vec<NormalCurve> {
    let xs = trace_crossings(chart, c.coords());
    let n = xs.len();
    // step of each crossing, by edge and reference index
    let mut at: Vec<Vec<usize>> = c.coords().iter().map(|&w| vec![0; w as usize]).collect();
    for (s, x) in xs.iter().enumerate() {
        at[chart.edge(x.dart)][x.index as usize] = s;
    }
    let darts: Vec<usize> = xs.iter().map(|x| x.dart).collect();
    let mut out = BTreeSet::new();
    for steps in &at {
        for w in steps.windows(2) {
            let (s1, s2) = (w[0], w[1]);
            if darts[s1] == darts[s2] {
                // the segment leaves c on opposite sides
                continue;
            }
            for (from, to) in [(s1, s2), (s2, s1)] {
                let len = (to + n - from - 1) % n;
                let walk: Vec<usize> = (1..=len).map(|k| darts[(from + k) % n]).collect();
                let reduced = cyclic_reduce(chart, &walk);
                if reduced.is_empty() {
                    continue;
                }
                if let Ok(z) = validate_u32(chart, collect_coords(chart, &reduced)) {
                    if z != *c {
                        out.insert((z.weight(), z));
                    }
                }
            }
        }
    }
    // band sums with the puncture at either end of an edge
    for (e, steps) in at.iter().enumerate() {
        if steps.is_empty() {
            continue;
        }
        let reference = chart.edge_darts(e)[0];
        for (s, near_start) in [(steps[0], true), (steps[steps.len() - 1], false)] {
            let before = darts[s];
            let (t, i) = (dart_triangle(before), dart_side(before));
            // corner of `t` at the puncture nearest the crossing
            let corner = if (before == reference) == near_start { i } else { (i + 1) % 3 };
            let mut walk = around_corner(chart, t, corner, i);
            walk.extend((1..n).map(|k| darts[(s + k) % n]));
            let reduced = cyclic_reduce(chart, &walk);
            if reduced.is_empty() {
                continue;
            }
            if let Ok(z) = validate_u32(chart, collect_coords(chart, &reduced)) {
                if z != *c {
                    out.insert((z.weight(), z));
                }
            }
        }
    }
    out.into_iter().map(|(_, z)| z).collect()
}

/// Darts crossed going once around the vertex at `corner` of triangle `t`,
/// leaving through the side other than `side`, up to but excluding the
/// crossing back into `t` through `side`.
fn around_corner(chart: &Triangulation, t: usize, corner: usize, side: usize) -> Vec<usize> {
    let start = (t, corner, side);
    let (mut t, mut j, mut came) = start;
    let mut out = Vec::new();
    loop {
        let exit = if came == j { (j + 2) % 3 } else { j };
        let d = dart(t, exit);
        let g = chart.glue(d);
        let (nt, ns) = (dart_triangle(g), dart_side(g));
        // side j starts at v_j; side j-1 ends there
        let nj = if exit == j { (ns + 1) % 3 } else { ns };
        if (nt, nj, ns) == start {
            return out;
        }
        out.push(d);
        (t, j, came) = (nt, nj, ns);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{charts, enumerate_curves, intersection_number};

    #[test]
    fn neighbours_are_disjoint() {
        for chart in [charts::s05(), charts::s12()] {
            for c in enumerate_curves(&chart, 3) {
                let ns = surgery_neighbours(&chart, &c);
                for z in &ns {
                    assert_eq!(intersection_number(&chart, &c, z).unwrap(), 0, "{c:?} {z:?}");
                    assert_ne!(z, &c);
                }
            }
        }
    }

    #[test]
    fn every_small_curve_has_a_neighbour() {
        for chart in [charts::s05(), charts::s12()] {
            for c in enumerate_curves(&chart, 3) {
                if c.weight() > 2 {
                    assert!(!surgery_neighbours(&chart, &c).is_empty(), "{c:?}");
                }
            }
        }
    }
}
