//! Derives an ideal triangulation from a complete track together with a
//! realization of the track in it.
//!
//! The dual of a trivalent track is a triangulation of the closed surface
//! with one triangle per switch and one vertex per complementary region.
//! Once-punctured monogons become the punctures. Each trigon vertex is
//! removed by flipping edges until it has degree three and merging the three
//! triangles around it. Branch walks are carried along through every move.

use std::collections::BTreeSet;

use super::track::{half, Realization, TrainTrack};
use super::TrackError;
use crate::surface::{dart, dart_side, dart_triangle, Triangulation};

struct Work {
    sides: Vec<[usize; 3]>,
    corners: Vec<[usize; 3]>,
    location: Vec<usize>,
    words: Vec<Vec<usize>>,
    /// switches at end 0 and end 1 of each branch
    ends: Vec<(usize, usize)>,
}

impl Work {
    fn glue(&self, d: usize) -> usize {
        let e = self.sides[dart_triangle(d)][dart_side(d)];
        for (t, s) in self.sides.iter().enumerate() {
            for (i, &f) in s.iter().enumerate() {
                if f == e && dart(t, i) != d {
                    return dart(t, i);
                }
            }
        }
        unreachable!("edge {e} has a single slot")
    }

    fn degree(&self, v: usize) -> usize {
        self.corners.iter().flatten().filter(|&&c| c == v).count()
    }

    fn reduce(&self, darts: Vec<usize>) -> Vec<usize> {
        let mut stack: Vec<usize> = Vec::new();
        for d in darts {
            match stack.last() {
                Some(&top) if self.glue(top) == d => {
                    stack.pop();
                }
                _ => stack.push(d),
            }
        }
        stack
    }

    /// Rewrites every branch walk after some triangles were replaced and the
    /// new tables installed. `map` sends each old dart to its new id (`None`
    /// for darts on edges interior to the replaced region), `loc` sends old
    /// triangles to new ones and `link` gives the dart joining two new
    /// triangles of the region.
    fn rewrite(
        &mut self,
        map: &dyn Fn(usize) -> Option<usize>,
        loc: &dyn Fn(usize) -> usize,
        link: &dyn Fn(usize, usize) -> usize,
    ) {
        let old_location = self.location.clone();
        for s in 0..self.location.len() {
            self.location[s] = loc(old_location[s]);
        }
        for b in 0..self.words.len() {
            let (s0, s1) = self.ends[b];
            let mut cur = self.location[s0];
            let mut out = Vec::new();
            for &d in &self.words[b] {
                let Some(nd) = map(d) else { continue };
                if dart_triangle(nd) != cur {
                    out.push(link(cur, dart_triangle(nd)));
                }
                out.push(nd);
                cur = dart_triangle(self.glue(nd));
            }
            let target = self.location[s1];
            if cur != target {
                out.push(link(cur, target));
            }
            self.words[b] = self.reduce(out);
        }
    }

    /// Every walk starts at its end-0 location and steps triangle by
    /// triangle to its end-1 location.
    fn consistent(&self) -> bool {
        self.words.iter().zip(&self.ends).all(|(w, &(s0, s1))| {
            let mut cur = self.location[s0];
            for &d in w {
                if dart_triangle(d) != cur {
                    return false;
                }
                cur = dart_triangle(self.glue(d));
            }
            cur == self.location[s1]
        })
    }

    /// Flips the edge on side `i` of triangle `t`.
    fn flip(&mut self, t: usize, i: usize) {
        let g = self.glue(dart(t, i));
        let (u, j) = (dart_triangle(g), dart_side(g));
        assert_ne!(t, u, "cannot flip an edge inside one triangle");
        let diag = self.sides[t][i];
        let (st, su) = (self.sides[t], self.sides[u]);
        let (ct, cu) = (self.corners[t], self.corners[u]);
        self.sides[t] = [st[(i + 2) % 3], su[(j + 1) % 3], diag];
        self.sides[u] = [su[(j + 2) % 3], st[(i + 1) % 3], diag];
        self.corners[t] = [ct[(i + 2) % 3], cu[(j + 1) % 3], cu[(j + 2) % 3]];
        self.corners[u] = [cu[(j + 2) % 3], ct[(i + 1) % 3], ct[(i + 2) % 3]];
        let map = move |d: usize| -> Option<usize> {
            let (x, k) = (dart_triangle(d), dart_side(d));
            if x == t {
                if k == i {
                    None
                } else if k == (i + 1) % 3 {
                    Some(dart(u, 1))
                } else {
                    Some(dart(t, 0))
                }
            } else if x == u {
                if k == j {
                    None
                } else if k == (j + 1) % 3 {
                    Some(dart(t, 1))
                } else {
                    Some(dart(u, 0))
                }
            } else {
                Some(d)
            }
        };
        let link = move |a: usize, b: usize| -> usize {
            assert!((a == t && b == u) || (a == u && b == t));
            dart(a, 2)
        };
        self.rewrite(&map, &|x| x, &link);
    }

    /// Replaces the three triangles around a degree-three vertex by one.
    fn merge(&mut self, v: usize) -> Result<(), TrackError> {
        let mut star = Vec::new();
        for (t, c) in self.corners.iter().enumerate() {
            for (k, &x) in c.iter().enumerate() {
                if x == v {
                    star.push((t, k));
                }
            }
        }
        let tris: BTreeSet<usize> = star.iter().map(|s| s.0).collect();
        if star.len() != 3 || tris.len() != 3 {
            return Err(TrackError::BadTrack(format!("vertex {v} has no clean star")));
        }
        // counterclockwise around v, the triangle after (t, k) lies across
        // side k - 1
        let (t0, k0) = star[0];
        let next = |(t, k): (usize, usize)| -> (usize, usize) {
            let g = self.glue(dart(t, (k + 2) % 3));
            let u = dart_triangle(g);
            let kk = (0..3).find(|&m| self.corners[u][m] == v).unwrap();
            (u, kk)
        };
        let s1 = next((t0, k0));
        let s2 = next(s1);
        let ring = [(t0, k0), s1, s2];
        let new_sides: [usize; 3] = std::array::from_fn(|m| {
            let (t, k) = ring[m];
            self.sides[t][(k + 1) % 3]
        });
        let new_corners: [usize; 3] = std::array::from_fn(|m| {
            let (t, k) = ring[m];
            self.corners[t][(k + 1) % 3]
        });
        // new triangle keeps the smallest index; the others are dropped
        let keep = *tris.iter().next().unwrap();
        let drop: Vec<usize> = tris.iter().copied().filter(|&x| x != keep).collect();
        let renum = |x: usize| -> usize {
            if tris.contains(&x) {
                keep
            } else {
                x - drop.iter().filter(|&&y| y < x).count()
            }
        };
        let mut sides = Vec::new();
        let mut corners = Vec::new();
        for x in 0..self.sides.len() {
            if x == keep {
                sides.push(new_sides);
                corners.push(new_corners);
            } else if !drop.contains(&x) {
                sides.push(self.sides[x]);
                corners.push(self.corners[x]);
            }
        }
        let ring_c = ring;
        let map = move |d: usize| -> Option<usize> {
            let (x, k) = (dart_triangle(d), dart_side(d));
            if let Some(m) = ring_c.iter().position(|r| r.0 == x) {
                let (_, kv) = ring_c[m];
                if k == (kv + 1) % 3 {
                    Some(dart(keep, m))
                } else {
                    None
                }
            } else {
                Some(dart(renum(x), k))
            }
        };
        let map_c = map;
        let renum_c = renum;
        // the old tables are needed to follow words, so rewrite before
        // installing and convert darts afterwards
        let old_words = self.words.clone();
        let old_location = self.location.clone();
        self.sides = sides;
        self.corners = corners;
        for s in 0..self.location.len() {
            self.location[s] = renum_c(old_location[s]);
        }
        for b in 0..self.words.len() {
            let w: Vec<usize> = old_words[b].iter().filter_map(|&d| map_c(d)).collect();
            self.words[b] = self.reduce(w);
        }
        Ok(())
    }
}

/// Result of the derivation: the chart and the track realized in it.
pub struct Derived {
    pub chart: Triangulation,
    pub track: TrainTrack,
}

/// Builds the chart dual to a complete trivalent track, removing trigons.
pub fn derive_chart(name: &str, track: &TrainTrack) -> Result<Derived, TrackError> {
    let ns = track.n_switches();
    let mut sides = Vec::with_capacity(ns);
    let mut hb_dart = vec![0usize; 2 * track.n_branches()];
    for (s, sw) in track.switches().iter().enumerate() {
        let order = sw.ccw();
        if order.len() != 3 {
            return Err(TrackError::NonGeneric(s));
        }
        sides.push([order[0] / 2, order[1] / 2, order[2] / 2]);
        for (i, &h) in order.iter().enumerate() {
            hb_dart[h] = dart(s, i);
        }
    }
    let closed = crate::surface::corner_labels(&sides)
        .map_err(|e| TrackError::BadTrack(format!("dual is not a surface: {e}")))?;
    // classify vertices by the cusps at their corners
    let mut cusps = vec![0usize; closed.1];
    for (s, sw) in track.switches().iter().enumerate() {
        let order = sw.ccw();
        for i in 0..3 {
            let (p, q) = (order[(i + 2) % 3], order[i]);
            if track.side_of(p) == track.side_of(q) {
                cusps[closed.0[s][i]] += 1;
            }
        }
    }
    let trigons: Vec<usize> = (0..closed.1).filter(|&v| cusps[v] == 3).collect();
    let monogons = (0..closed.1).filter(|&v| cusps[v] == 1).count();
    if trigons.len() + monogons != closed.1 {
        return Err(TrackError::BadTrack(
            "complementary regions must be trigons or once-punctured monogons".into(),
        ));
    }
    let ends: Vec<(usize, usize)> = (0..track.n_branches())
        .map(|b| (track.switch_of(half(b, 0)), track.switch_of(half(b, 1))))
        .collect();
    let mut w = Work {
        sides,
        corners: closed.0,
        location: (0..ns).collect(),
        words: (0..track.n_branches()).map(|b| vec![hb_dart[half(b, 0)]]).collect(),
        ends,
    };
    for &v in &trigons {
        while w.degree(v) > 3 {
            let mut flipped = false;
            'search: for t in 0..w.sides.len() {
                for i in 0..3 {
                    let g = w.glue(dart(t, i));
                    let (u, j) = (dart_triangle(g), dart_side(g));
                    if u == t {
                        continue;
                    }
                    let at_v = |x: usize| usize::from(x == v);
                    let old = at_v(w.corners[t][i]) + at_v(w.corners[t][(i + 1) % 3]);
                    let new = at_v(w.corners[t][(i + 2) % 3]) + at_v(w.corners[u][(j + 2) % 3]);
                    if new >= old {
                        continue;
                    }
                    w.flip(t, i);
                    debug_assert!(w.consistent());
                    flipped = true;
                    break 'search;
                }
            }
            if !flipped {
                return Err(TrackError::BadTrack(format!("trigon vertex {v} cannot be reduced")));
            }
        }
        w.merge(v)?;
        debug_assert!(w.consistent());
    }
    // relabel edges compactly in order of first use
    let mut label = std::collections::BTreeMap::new();
    for s in &w.sides {
        for &e in s {
            let n = label.len();
            label.entry(e).or_insert(n);
        }
    }
    let sides: Vec<[usize; 3]> = w.sides.iter().map(|s| s.map(|e| label[&e])).collect();
    let chart = Triangulation::from_sides(name, sides)
        .map_err(|e| TrackError::BadTrack(format!("derived chart invalid: {e}")))?;
    let realization = Realization {
        location: w.location,
        words: w.words,
    };
    let track = track.clone().with_realization(Some(realization));
    Ok(Derived { chart, track })
}
