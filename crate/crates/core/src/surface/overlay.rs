//! Independent intersection oracle: realize two curves together as chords
//! in every triangle, then remove innermost bigons until none remain. The
//! minimal configuration also decides whether the pair fills the surface.

use std::collections::HashMap;

use super::chart::{dart_side, Triangulation, UnionFind};
use super::normal::{follow, NormalCurve};
use super::SurfaceError;

const BLOCK: u64 = 1 << 32;
const CIRCLE: u64 = 3 * BLOCK;

#[derive(Clone, Copy, Debug)]
struct Chord {
    triangle: usize,
    entry: usize,
    entry_ref: u32,
    exit: usize,
    exit_ref: u32,
}

fn chords_of(chart: &Triangulation, v: &[u32]) -> Vec<Chord> {
    let e = v.iter().position(|&x| x > 0).expect("nonzero curve");
    let mut xs = Vec::new();
    follow(chart, v, e, 0, |x, s| xs.push((x, s)));
    let n = xs.len();
    (0..n)
        .map(|k| {
            let (prev, _) = xs[(k + n - 1) % n];
            let (cur, step) = xs[k];
            Chord {
                triangle: step.triangle,
                entry: chart.glue(prev.dart),
                entry_ref: prev.index,
                exit: cur.dart,
                exit_ref: cur.index,
            }
        })
        .collect()
}

/// Outcome of bigon reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalOverlay {
    /// Crossings in the initial nested realization.
    pub initial_crossings: u64,
    /// Crossings after all bigons are gone: the geometric intersection number.
    pub crossings: u64,
    pub bigons_removed: usize,
    /// Faces of the complement in the filled-in surface.
    pub faces: usize,
    /// True iff every complementary region is a disc with at most one puncture.
    pub fills: bool,
}

struct Overlay<'a> {
    chart: &'a Triangulation,
    ca: Vec<Chord>,
    cb: Vec<Chord>,
    /// Per edge, the labels of combined points in reference order
    /// (`false` for the first curve). Each curve keeps its own order.
    order: Vec<Vec<bool>>,
    /// `pos[c][e][j]` is the combined reference index of point `j` of curve `c`.
    pos: [Vec<Vec<u32>>; 2],
}

struct Crossings {
    /// (first-curve chord, second-curve chord)
    list: Vec<(usize, usize)>,
    along_a: Vec<usize>,
    pos_b: Vec<usize>,
}

impl<'a> Overlay<'a> {
    fn new(chart: &'a Triangulation, a: &[u32], b: &[u32]) -> Self {
        let order: Vec<Vec<bool>> = (0..chart.n_edges())
            .map(|e| {
                let mut o = vec![false; a[e] as usize];
                o.extend(std::iter::repeat_n(true, b[e] as usize));
                o
            })
            .collect();
        let mut ov = Overlay {
            chart,
            ca: chords_of(chart, a),
            cb: chords_of(chart, b),
            order,
            pos: [Vec::new(), Vec::new()],
        };
        ov.reindex();
        ov
    }

    fn reindex(&mut self) {
        for c in 0..2 {
            self.pos[c] = self
                .order
                .iter()
                .map(|o| {
                    o.iter()
                        .enumerate()
                        .filter(|(_, &l)| l == (c == 1))
                        .map(|(k, _)| k as u32)
                        .collect()
                })
                .collect();
        }
    }

    /// Circle coordinate of a combined point seen from inside the triangle
    /// of dart `d`.
    fn circle(&self, d: usize, combined_ref: u32) -> u64 {
        let e = self.chart.edge(d);
        let n = self.order[e].len() as u32;
        let p = if self.chart.is_reference_dart(d) {
            combined_ref
        } else {
            n - 1 - combined_ref
        };
        dart_side(d) as u64 * BLOCK + 2 * p as u64 + 1
    }

    fn ends(&self, c: usize, ch: &Chord) -> (u64, u64) {
        let pe = self.pos[c][self.chart.edge(ch.entry)][ch.entry_ref as usize];
        let px = self.pos[c][self.chart.edge(ch.exit)][ch.exit_ref as usize];
        (self.circle(ch.entry, pe), self.circle(ch.exit, px))
    }

    fn crossings(&self) -> Crossings {
        let nt = self.chart.n_triangles();
        let mut by_tri: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); nt];
        for (k, ch) in self.ca.iter().enumerate() {
            by_tri[ch.triangle].0.push(k);
        }
        for (k, ch) in self.cb.iter().enumerate() {
            by_tri[ch.triangle].1.push(k);
        }
        let ea: Vec<(u64, u64)> = self.ca.iter().map(|c| self.ends(0, c)).collect();
        let eb: Vec<(u64, u64)> = self.cb.iter().map(|c| self.ends(1, c)).collect();
        let mut list = Vec::new();
        for (la, lb) in &by_tri {
            for &i in la {
                for &j in lb {
                    if interleave(ea[i], eb[j]) {
                        list.push((i, j));
                    }
                }
            }
        }
        // order crossings along each chord by the endpoint of the crossing
        // chord on the counterclockwise arc from the chord's entry
        let key = |from: (u64, u64), other: (u64, u64)| -> u64 {
            let f = |x: u64| (x + CIRCLE - from.0) % CIRCLE;
            let lim = f(from.1);
            if f(other.0) < lim {
                f(other.0)
            } else {
                f(other.1)
            }
        };
        let mut along_a: Vec<usize> = (0..list.len()).collect();
        along_a.sort_by_key(|&x| {
            let (i, j) = list[x];
            (i, key(ea[i], eb[j]))
        });
        let mut along_b: Vec<usize> = (0..list.len()).collect();
        along_b.sort_by_key(|&x| {
            let (i, j) = list[x];
            (j, key(eb[j], ea[i]))
        });
        let mut pos_b = vec![0; list.len()];
        for (k, &x) in along_b.iter().enumerate() {
            pos_b[x] = k;
        }
        Crossings {
            list,
            along_a,
            pos_b,
        }
    }

    /// Points (edge, own reference index) crossed by the arc of curve `c`
    /// from chord `from` forward over `len` boundaries.
    fn forward_points(&self, c: usize, from: usize, len: usize) -> Vec<(usize, usize, u32)> {
        let chords = if c == 0 { &self.ca } else { &self.cb };
        let n = chords.len();
        (0..len)
            .map(|s| {
                let ch = &chords[(from + s) % n];
                (ch.exit, self.chart.edge(ch.exit), ch.exit_ref)
            })
            .collect()
    }

    fn find_bigon(&self, x: &Crossings) -> Option<Vec<(usize, u32, u32)>> {
        let n = x.list.len();
        if n < 2 {
            return None;
        }
        let na = self.ca.len();
        let nb = self.cb.len();
        for pa in 0..n {
            let cx = x.along_a[pa];
            let cy = x.along_a[(pa + 1) % n];
            let (ax, bx) = x.list[cx];
            let (ay, by) = x.list[cy];
            let len_a = if pa + 1 < n { ay - ax } else { ay + na - ax };
            let a_pts = self.forward_points(0, ax, len_a);
            let a_darts: Vec<usize> = a_pts.iter().map(|p| p.0).collect();
            let (px, py) = (x.pos_b[cx], x.pos_b[cy]);
            // b runs forward from X to Y
            if (px + 1) % n == py {
                let len_b = if px + 1 < n { by - bx } else { by + nb - bx };
                let b_pts = self.forward_points(1, bx, len_b);
                if b_pts.iter().map(|p| p.0).eq(a_darts.iter().copied()) {
                    return Some(pair_points(&a_pts, &b_pts));
                }
            }
            // b runs backward from X to Y, i.e. forward from Y to X
            if (py + 1) % n == px {
                let len_b = if py + 1 < n { bx - by } else { bx + nb - by };
                let mut b_pts = self.forward_points(1, by, len_b);
                b_pts.reverse();
                let rev: Vec<usize> = b_pts.iter().map(|p| self.chart.glue(p.0)).collect();
                if rev == a_darts {
                    return Some(pair_points(&a_pts, &b_pts));
                }
            }
        }
        None
    }

    fn swap(&mut self, pts: &[(usize, u32, u32)]) {
        for &(e, ja, jb) in pts {
            let ia = self.pos[0][e][ja as usize] as usize;
            let ib = self.pos[1][e][jb as usize] as usize;
            assert_eq!(ia.abs_diff(ib), 1, "bigon points not adjacent on edge {e}");
            self.order[e].swap(ia, ib);
        }
        self.reindex();
    }

    /// Counts complementary faces of the union in the filled-in surface and
    /// checks each is a disc with at most one puncture.
    fn faces(&self, x: &Crossings) -> (usize, bool) {
        let ch = self.chart;
        let nt = ch.n_triangles();
        // boundary segments: segment k of dart d lies before point k
        let mut seg_base = vec![0usize; 3 * nt];
        let mut total = 0;
        for d in 0..3 * nt {
            seg_base[d] = total;
            total += self.order[ch.edge(d)].len() + 1;
        }
        let corner_base = total;
        let mut uf = UnionFind::new(total + ch.n_vertices());
        let mut interior = 0usize;
        let mut chords_in: Vec<Vec<(u64, u64)>> = vec![Vec::new(); nt];
        for c in &self.ca {
            let (p, q) = self.ends(0, c);
            chords_in[c.triangle].push((p.min(q), p.max(q)));
        }
        for c in &self.cb {
            let (p, q) = self.ends(1, c);
            chords_in[c.triangle].push((p.min(q), p.max(q)));
        }
        let mut crossings_in = vec![0usize; nt];
        for &(i, _) in &x.list {
            crossings_in[self.ca[i].triangle] += 1;
        }
        for t in 0..nt {
            let chords = &chords_in[t];
            let mut groups: HashMap<Vec<u64>, usize> = HashMap::new();
            for i in 0..3 {
                let d = 3 * t + i;
                let n = self.order[ch.edge(d)].len();
                for k in 0..=n {
                    let coord = i as u64 * BLOCK + 2 * k as u64;
                    let mut sig = vec![0u64; chords.len().div_ceil(64)];
                    for (m, &(p, q)) in chords.iter().enumerate() {
                        if p < coord && coord < q {
                            sig[m / 64] |= 1 << (m % 64);
                        }
                    }
                    let id = seg_base[d] + k;
                    match groups.get(&sig) {
                        Some(&r) => {
                            uf.union(r, id);
                        }
                        None => {
                            groups.insert(sig, id);
                        }
                    }
                }
                // the last segment of side i meets the first of side i+1
                let next = 3 * t + (i + 1) % 3;
                uf.union(seg_base[d] + n, seg_base[next]);
                let v = ch.corner_vertex(t, (i + 1) % 3);
                uf.union(seg_base[next], corner_base + v);
            }
            let regions = 1 + chords.len() + crossings_in[t];
            interior += regions - groups.len();
        }
        // glue segments across edges, reversing the order
        for d in 0..3 * nt {
            let g = ch.glue(d);
            if d < g {
                let n = self.order[ch.edge(d)].len();
                for k in 0..=n {
                    uf.union(seg_base[d] + k, seg_base[g] + n - k);
                }
            }
        }
        let mut punctures_per_face: HashMap<usize, usize> = HashMap::new();
        for id in 0..total {
            punctures_per_face.entry(uf.find(id)).or_insert(0);
        }
        for v in 0..ch.n_vertices() {
            *punctures_per_face.entry(uf.find(corner_base + v)).or_insert(0) += 1;
        }
        let faces = punctures_per_face.len() + interior;
        let chi_closed = 2 - 2 * ch.sig().genus as i64;
        let v = x.list.len() as i64;
        let fills = v > 0
            && faces as i64 == chi_closed + v
            && punctures_per_face.values().all(|&p| p <= 1);
        (faces, fills)
    }
}

fn interleave(x: (u64, u64), y: (u64, u64)) -> bool {
    let (p, q) = (x.0.min(x.1), x.0.max(x.1));
    let in0 = p < y.0 && y.0 < q;
    let in1 = p < y.1 && y.1 < q;
    in0 != in1
}

fn pair_points(a: &[(usize, usize, u32)], b: &[(usize, usize, u32)]) -> Vec<(usize, u32, u32)> {
    a.iter()
        .zip(b)
        .map(|(pa, pb)| {
            debug_assert_eq!(pa.1, pb.1);
            (pa.1, pa.2, pb.2)
        })
        .collect()
}

/// Reduces the overlay of two distinct curves to minimal position.
pub fn minimal_overlay(
    chart: &Triangulation,
    a: &NormalCurve,
    b: &NormalCurve,
) -> Result<MinimalOverlay, SurfaceError> {
    for c in [a, b] {
        if c.coords().len() != chart.n_edges() {
            return Err(SurfaceError::MismatchedChart {
                expected: chart.n_edges(),
                found: c.coords().len(),
            });
        }
    }
    if a == b {
        return Ok(MinimalOverlay {
            initial_crossings: 0,
            crossings: 0,
            bigons_removed: 0,
            faces: 0,
            fills: false,
        });
    }
    let mut ov = Overlay::new(chart, a.coords(), b.coords());
    let mut x = ov.crossings();
    let initial = x.list.len() as u64;
    let mut removed = 0;
    while let Some(pts) = ov.find_bigon(&x) {
        let before = x.list.len();
        ov.swap(&pts);
        x = ov.crossings();
        assert_eq!(x.list.len() + 2, before, "bigon removal must drop two crossings");
        removed += 1;
    }
    let (faces, fills) = ov.faces(&x);
    Ok(MinimalOverlay {
        initial_crossings: initial,
        crossings: x.list.len() as u64,
        bigons_removed: removed,
        faces,
        fills,
    })
}

/// Whether two curves fill the surface.
pub fn fills(chart: &Triangulation, a: &NormalCurve, b: &NormalCurve) -> Result<bool, SurfaceError> {
    Ok(minimal_overlay(chart, a, b)?.fills)
}
