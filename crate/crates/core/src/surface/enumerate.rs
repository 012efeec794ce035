//! Bounded enumeration and sampling of curves.

use rand::Rng;

use super::chart::Triangulation;
use super::normal::{validate_u32, NormalCurve};

fn triangle_ok(w: [u32; 3]) -> bool {
    let [x, y, z] = w;
    (x + y + z) % 2 == 0 && x <= y + z && y <= x + z && z <= x + y
}

/// All curves with every coordinate at most `bound`, sorted by key.
pub fn enumerate_curves(chart: &Triangulation, bound: u32) -> Vec<NormalCurve> {
    let n = chart.n_edges();
    // triangles become checkable once their largest edge is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, s) in chart.sides().iter().enumerate() {
        ready[*s.iter().max().unwrap()].push(t);
    }
    let mut out = Vec::new();
    let mut v = vec![0u32; n];
    fn rec(
        chart: &Triangulation,
        ready: &[Vec<usize>],
        bound: u32,
        e: usize,
        v: &mut Vec<u32>,
        out: &mut Vec<NormalCurve>,
    ) {
        if e == v.len() {
            if let Ok(c) = validate_u32(chart, v.clone()) {
                out.push(c);
            }
            return;
        }
        for x in 0..=bound {
            v[e] = x;
            let ok = ready[e].iter().all(|&t| {
                let s = chart.sides()[t];
                triangle_ok([v[s[0]], v[s[1]], v[s[2]]])
            });
            if ok {
                rec(chart, ready, bound, e + 1, v, out);
            }
        }
        v[e] = 0;
    }
    if bound > 0 {
        rec(chart, &ready, bound, 0, &mut v, &mut out);
    }
    out.sort();
    out
}

/// Uniform sample among curves with coordinates at most `bound`, by
/// rejection. Returns `None` after `tries` failures.
pub fn random_curve<R: Rng + ?Sized>(
    chart: &Triangulation,
    bound: u32,
    tries: usize,
    rng: &mut R,
) -> Option<NormalCurve> {
    for _ in 0..tries {
        let v: Vec<u32> = (0..chart.n_edges()).map(|_| rng.gen_range(0..=bound)).collect();
        let ok = chart
            .sides()
            .iter()
            .all(|s| triangle_ok([v[s[0]], v[s[1]], v[s[2]]]));
        if ok {
            if let Ok(c) = validate_u32(chart, v) {
                return Some(c);
            }
        }
    }
    None
}
