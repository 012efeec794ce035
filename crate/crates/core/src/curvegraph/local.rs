//! Distances and geodesics between curves that need not lie in the
//! universe.
//!
//! Up to two the distance is topological: equal, disjoint, or intersecting
//! without filling. A filling pair is at distance exactly three when a curve
//! disjoint from one of them does not fill with the other; candidates come
//! from arc surgery. Longer distances are bounded above through the
//! universe, reached by surgery descent: first by weight, then, when that
//! stalls, by intersection with a chosen universe curve on a chart where
//! the two are short.

use std::collections::{HashMap, HashSet};

use super::{CurveGraphIndex, Distance, GraphError, UNREACHED};
use crate::surface::{enumerate_curves, intersection_number, pair_fills, shorten, surgery_neighbours, NormalCurve};

/// Levels of surgery descent tried when attaching a curve to the universe.
const DESCENT_DEPTH: usize = 8;
/// Lightest curves kept per descent level.
const BEAM: usize = 12;
/// Universe curves aimed at once weight descent stalls.
const BRIDGE_TARGETS: usize = 4;
/// Levels of the intersection-guided descent towards one target.
const BRIDGE_DEPTH: usize = 10;
/// Weight bound of the exhaustive witness search on a shortened chart.
const SHORT_BOUND: u32 = 3;

/// A universe curve reachable from an outside curve, with the curves in
/// between.
#[derive(Clone, Debug)]
pub(super) struct Anchor {
    idx: usize,
    /// Intermediate curves, each disjoint from its neighbours.
    chain: Vec<NormalCurve>,
    /// Zero when the curve is the universe curve itself.
    offset: u32,
}

impl Anchor {
    fn new(idx: usize, chain: Vec<NormalCurve>) -> Self {
        let offset = chain.len() as u32 + 1;
        Anchor { idx, chain, offset }
    }
}

/// Anchors computed so far, by curve.
pub(super) type AnchorCache = HashMap<NormalCurve, Vec<Anchor>>;

impl CurveGraphIndex {
    pub(super) fn inter(&self, x: &NormalCurve, y: &NormalCurve) -> Result<u64, GraphError> {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => Ok(self.inter[i][j]),
            _ => Ok(intersection_number(&self.chart, x, y)?),
        }
    }

    /// Exact distance when at most two, `None` for a filling pair.
    pub(super) fn small_distance(&self, x: &NormalCurve, y: &NormalCurve) -> Result<Option<u32>, GraphError> {
        if x == y {
            return Ok(Some(0));
        }
        if self.inter(x, y)? == 0 {
            return Ok(Some(1));
        }
        if !pair_fills(&self.chart, x, y)? {
            return Ok(Some(2));
        }
        Ok(None)
    }

    /// A curve disjoint from both of a non-filling intersecting pair.
    pub(super) fn middle(&self, x: &NormalCurve, y: &NormalCurve) -> Result<Option<NormalCurve>, GraphError> {
        for (p, q) in [(x, y), (y, x)] {
            for z in surgery_neighbours(&self.chart, p) {
                if z != *q && self.inter(&z, q)? == 0 {
                    return Ok(Some(z));
                }
            }
        }
        for z in &self.universe {
            if z != x && z != y && self.inter(z, x)? == 0 && self.inter(z, y)? == 0 {
                return Ok(Some(z.clone()));
            }
        }
        // the same search where the pair is short, one surgery level deeper
        let s = shorten(&self.chart, &[x.clone(), y.clone()])?;
        let ch = s.chart();
        let (sx, sy) = (&s.curves[0], &s.curves[1]);
        let disjoint = |z: &NormalCurve| -> Result<bool, GraphError> {
            Ok(z != sx && z != sy && intersection_number(ch, z, sx)? == 0 && intersection_number(ch, z, sy)? == 0)
        };
        for (p, _) in [(sx, sy), (sy, sx)] {
            let first = surgery_neighbours(ch, p);
            for z in &first {
                if disjoint(z)? {
                    return Ok(Some(s.pull_back(z)?));
                }
            }
            for n in first.iter().take(BEAM) {
                for z in surgery_neighbours(ch, n) {
                    if disjoint(&z)? {
                        return Ok(Some(s.pull_back(&z)?));
                    }
                }
            }
        }
        for z in enumerate_curves(ch, SHORT_BOUND) {
            if disjoint(&z)? {
                return Ok(Some(s.pull_back(&z)?));
            }
        }
        Ok(None)
    }

    /// For a filling pair, a curve disjoint from `x` that does not fill with
    /// `y`, or the same with the roles swapped. The flag is true when the
    /// witness is next to `y`.
    fn third(&self, x: &NormalCurve, y: &NormalCurve) -> Result<Option<(NormalCurve, bool)>, GraphError> {
        for (p, q, flip) in [(x, y, false), (y, x, true)] {
            for z in surgery_neighbours(&self.chart, p) {
                if !pair_fills(&self.chart, &z, q)? {
                    return Ok(Some((z, flip)));
                }
            }
        }
        let s = shorten(&self.chart, &[x.clone(), y.clone()])?;
        let ch = s.chart();
        for (p, q, flip) in [(&s.curves[0], &s.curves[1], false), (&s.curves[1], &s.curves[0], true)] {
            for z in surgery_neighbours(ch, p) {
                if !pair_fills(ch, &z, q)? {
                    return Ok(Some((s.pull_back(&z)?, flip)));
                }
            }
        }
        Ok(None)
    }

    /// Universe curves near `c`: itself, its disjoint universe curves, or
    /// those met by a surgery descent.
    pub(super) fn anchors(&self, c: &NormalCurve) -> Result<Vec<Anchor>, GraphError> {
        if let Some(i) = self.index_of(c) {
            return Ok(vec![Anchor {
                idx: i,
                chain: Vec::new(),
                offset: 0,
            }]);
        }
        let mut out: Vec<Anchor> = Vec::new();
        for (k, u) in self.universe.iter().enumerate() {
            if self.inter(c, u)? == 0 {
                out.push(Anchor::new(k, Vec::new()));
            }
        }
        if !out.is_empty() {
            return Ok(out);
        }
        let mut seen: HashSet<NormalCurve> = HashSet::from([c.clone()]);
        let mut level: Vec<Vec<NormalCurve>> = vec![Vec::new()];
        for _ in 0..DESCENT_DEPTH {
            let mut next: Vec<Vec<NormalCurve>> = Vec::new();
            for chain in &level {
                let tip = chain.last().unwrap_or(c);
                for z in surgery_neighbours(&self.chart, tip) {
                    if let Some(i) = self.index_of(&z) {
                        out.push(Anchor::new(i, chain.clone()));
                    } else if seen.insert(z.clone()) {
                        let mut longer = chain.clone();
                        longer.push(z);
                        next.push(longer);
                    }
                }
            }
            if !out.is_empty() {
                return Ok(out);
            }
            next.sort_by_key(|ch| ch.last().map(|z| z.weight()));
            next.truncate(BEAM);
            level = next;
        }
        // weight descent stalled: aim at the universe curves met least
        let mut targets: Vec<(u64, usize)> = Vec::with_capacity(self.universe.len());
        for (k, u) in self.universe.iter().enumerate() {
            targets.push((self.inter(c, u)?, k));
        }
        targets.sort_unstable();
        for &(_, k) in targets.iter().take(BRIDGE_TARGETS) {
            if let Some(chain) = self.bridge(c, &self.universe[k])? {
                out.push(Anchor::new(k, chain));
            }
        }
        Ok(out)
    }

    /// Curves from `c` towards `u`, each disjoint from the previous, the
    /// last disjoint from `u`. The descent runs where the pair is short and
    /// ranks surgery neighbours by how often they meet `u`.
    fn bridge(&self, c: &NormalCurve, u: &NormalCurve) -> Result<Option<Vec<NormalCurve>>, GraphError> {
        let s = shorten(&self.chart, &[c.clone(), u.clone()])?;
        let ch = s.chart();
        let (sc, su) = (&s.curves[0], &s.curves[1]);
        let mut seen: HashSet<NormalCurve> = HashSet::from([sc.clone(), su.clone()]);
        let short = enumerate_curves(ch, SHORT_BOUND);
        let mut level: Vec<Vec<NormalCurve>> = vec![Vec::new()];
        for _ in 0..BRIDGE_DEPTH {
            let mut next: Vec<(u64, u64, Vec<NormalCurve>)> = Vec::new();
            for chain in &level {
                let tip = chain.last().unwrap_or(sc);
                let mut cands = surgery_neighbours(ch, tip);
                for z in &short {
                    if intersection_number(ch, z, tip)? == 0 {
                        cands.push(z.clone());
                    }
                }
                for z in cands {
                    if !seen.insert(z.clone()) {
                        continue;
                    }
                    let meet = intersection_number(ch, &z, su)?;
                    let mut longer = chain.clone();
                    longer.push(z);
                    if meet == 0 {
                        return Ok(Some(longer.iter().map(|z| s.pull_back(z)).collect::<Result<_, _>>()?));
                    }
                    let w = longer.last().map_or(0, |z| z.weight());
                    next.push((meet, w, longer));
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by_key(|x| (x.0, x.1));
            next.truncate(BEAM);
            level = next.into_iter().map(|(_, _, ch)| ch).collect();
        }
        Ok(None)
    }

    /// Shortest route between anchor sets through the universe: the two
    /// anchors and the universe path between them, if within `cap`.
    fn route(&self, ax: &[Anchor], ay: &[Anchor], cap: u32) -> Option<(u32, usize, usize)> {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, a) in ax.iter().enumerate() {
            for (j, b) in ay.iter().enumerate() {
                let d = self.dist[a.idx][b.idx];
                if d == UNREACHED {
                    continue;
                }
                let total = a.offset + d + b.offset;
                if total <= cap && best.is_none_or(|(t, _, _)| total < t) {
                    best = Some((total, i, j));
                }
            }
        }
        best
    }

    /// Distance and, on request, a path realizing the upper bound.
    pub(super) fn solve(
        &self,
        x: &NormalCurve,
        y: &NormalCurve,
        cap: u32,
        want_path: bool,
        cache: &mut AnchorCache,
    ) -> Result<(Distance, Option<Vec<NormalCurve>>), GraphError> {
        if let Some(d) = self.small_distance(x, y)? {
            if d > cap {
                return Err(GraphError::Unreachable(cap));
            }
            let path = if !want_path {
                None
            } else {
                match d {
                    0 => Some(vec![x.clone()]),
                    1 => Some(vec![x.clone(), y.clone()]),
                    _ => self.middle(x, y)?.map(|z| vec![x.clone(), z, y.clone()]),
                }
            };
            return Ok((Distance { value: d, lower: d }, path));
        }
        if cap >= 3 {
            if let Some((z, flip)) = self.third(x, y)? {
                let path = if want_path {
                    let (p, q) = if flip { (y, x) } else { (x, y) };
                    self.middle(&z, q)?.map(|w| {
                        let mut v = vec![p.clone(), z, w, q.clone()];
                        if flip {
                            v.reverse();
                        }
                        v
                    })
                } else {
                    None
                };
                return Ok((Distance { value: 3, lower: 3 }, path));
            }
        }
        for c in [x, y] {
            if !cache.contains_key(c) {
                let a = self.anchors(c)?;
                cache.insert(c.clone(), a);
            }
        }
        let (ax, ay) = (&cache[x], &cache[y]);
        let (value, i, j) = self.route(ax, ay, cap).ok_or(GraphError::Unreachable(cap))?;
        let path = want_path.then(|| {
            let (a, b) = (&ax[i], &ay[j]);
            let mut v = Vec::new();
            if a.offset > 0 {
                v.push(x.clone());
            }
            v.extend(a.chain.iter().cloned());
            v.extend(self.universe_path(a.idx, b.idx).into_iter().map(|k| self.universe[k].clone()));
            v.extend(b.chain.iter().rev().cloned());
            if b.offset > 0 {
                v.push(y.clone());
            }
            v
        });
        Ok((Distance { value, lower: 3 }, path))
    }

    /// A shortest universe path from `a` to `b`, endpoints included.
    pub(super) fn universe_path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut path = vec![a];
        let mut u = a;
        while u != b {
            u = *self.adj[u]
                .iter()
                .find(|&&w| self.dist[w][b] + 1 == self.dist[u][b])
                .expect("distances come from the same graph");
            path.push(u);
        }
        path
    }
}
