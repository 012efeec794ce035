//! The curve graph restricted to a bounded universe of curves, and distances
//! between arbitrary curves measured against it.
//!
//! Inside the universe, breadth-first search gives distances that can only
//! overestimate the true ones. Topology supplies a lower bound: distinct
//! curves are at distance at least 1, intersecting curves at least 2, and a
//! filling pair at least 3. A distance is certified when the two bounds
//! meet.
//!
//! Curves outside the universe are attached to it by surgery chains, so
//! their distances are exact up to three and upper bounds beyond.

mod bowditch;
mod local;
mod report;

use std::collections::{HashMap, VecDeque};

use rand::Rng;
use thiserror::Error;

use crate::scalar::Rational;
use crate::surface::{intersection_number, pair_fills, NormalCurve, SurfaceError, Triangulation};

use local::AnchorCache;
pub use bowditch::{in_l_a, membership, scan_l, ScanEntry, ScanL};
pub use report::{ConstantsReport, Measured};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("curve is not in the bounded universe")]
    NotInUniverse,
    #[error("no path within radius {0}")]
    Unreachable(u32),
    #[error("alpha and beta are disjoint")]
    DegeneratePair,
    #[error("distance {0} is not certified")]
    Uncertified(u32),
    #[error("no path of length {0} could be constructed")]
    NoWitness(u32),
    #[error("parameter must be positive")]
    NonPositive,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A BFS distance together with its topological lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Distance {
    pub value: u32,
    pub lower: u32,
}

impl Distance {
    pub fn certified(&self) -> bool {
        self.value == self.lower
    }

    /// The value if certified.
    pub fn exact(&self) -> Result<u32, GraphError> {
        if self.certified() {
            Ok(self.value)
        } else {
            Err(GraphError::Uncertified(self.value))
        }
    }
}

const UNREACHED: u32 = u32::MAX;

/// All curves with coordinates at most `bound`, their disjointness graph and
/// all-pairs BFS distances.
pub struct CurveGraphIndex {
    chart: Triangulation,
    bound: u32,
    universe: Vec<NormalCurve>,
    pos: HashMap<NormalCurve, usize>,
    adj: Vec<Vec<usize>>,
    /// `dist[x][y]`, `UNREACHED` when disconnected inside the universe.
    dist: Vec<Vec<u32>>,
    /// `i(x, y)` for universe pairs.
    inter: Vec<Vec<u64>>,
}

impl CurveGraphIndex {
    /// Builds the index, computing intersections on `workers` threads.
    pub fn build(chart: &Triangulation, bound: u32, workers: usize) -> Self {
        let universe = crate::surface::enumerate_curves(chart, bound);
        Self::from_universe(chart, bound, universe, workers)
    }

    pub fn from_universe(chart: &Triangulation, bound: u32, universe: Vec<NormalCurve>, workers: usize) -> Self {
        let n = universe.len();
        let workers = workers.clamp(1, n.max(1));
        let mut inter = vec![vec![0u64; n]; n];
        std::thread::scope(|s| {
            let rows: Vec<_> = (0..workers)
                .map(|w| {
                    let universe = &universe;
                    s.spawn(move || {
                        (w..n)
                            .step_by(workers)
                            .map(|x| {
                                let row: Vec<u64> = (0..n)
                                    .map(|y| {
                                        if y <= x {
                                            0
                                        } else {
                                            intersection_number(chart, &universe[x], &universe[y])
                                                .expect("universe curves share the chart")
                                        }
                                    })
                                    .collect();
                                (x, row)
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in rows {
                for (x, row) in h.join().expect("intersection worker panicked") {
                    inter[x] = row;
                }
            }
        });
        for x in 0..n {
            for y in 0..x {
                inter[x][y] = inter[y][x];
            }
        }
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).filter(|&y| y != x && inter[x][y] == 0).collect())
            .collect();
        let dist = (0..n).map(|x| bfs(&adj, &[x], UNREACHED)).collect();
        let pos = universe.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        CurveGraphIndex {
            chart: chart.clone(),
            bound,
            universe,
            pos,
            adj,
            dist,
            inter,
        }
    }

    pub fn chart(&self) -> &Triangulation {
        &self.chart
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn universe(&self) -> &[NormalCurve] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn index_of(&self, c: &NormalCurve) -> Option<usize> {
        self.pos.get(c).copied()
    }

    pub fn neighbours(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    /// `i(x, y)` for universe indices.
    pub fn intersection(&self, x: usize, y: usize) -> u64 {
        self.inter[x][y]
    }

    /// Topological lower bound on `d(x, y)`, computed only as far as needed
    /// to compare with `upper`.
    fn lower_bound(&self, x: &NormalCurve, y: &NormalCurve, upper: u32) -> Result<u32, GraphError> {
        if x == y {
            return Ok(0);
        }
        if self.inter(x, y)? == 0 {
            return Ok(1);
        }
        if upper > 3 {
            // no certificate reaches past three; skip the filling test
            return Ok(2);
        }
        Ok(if pair_fills(&self.chart, x, y)? { 3 } else { 2 })
    }

    /// Distance between two universe curves.
    pub fn distance(&self, x: &NormalCurve, y: &NormalCurve, cap: u32) -> Result<Distance, GraphError> {
        let (i, j) = (
            self.index_of(x).ok_or(GraphError::NotInUniverse)?,
            self.index_of(y).ok_or(GraphError::NotInUniverse)?,
        );
        let value = self.dist[i][j];
        if value > cap {
            return Err(GraphError::Unreachable(cap));
        }
        Ok(Distance {
            value,
            lower: self.lower_bound(x, y, value)?,
        })
    }

    /// Distance between arbitrary curves of the chart. Values up to three
    /// are exact; longer ones are upper bounds through the universe.
    pub fn distance_ext(&self, x: &NormalCurve, y: &NormalCurve, cap: u32) -> Result<Distance, GraphError> {
        Ok(self.solve(x, y, cap, false, &mut AnchorCache::new())?.0)
    }

    /// Pairwise [`CurveGraphIndex::distance_ext`], `None` past `cap`.
    pub fn distance_matrix(&self, curves: &[NormalCurve], cap: u32) -> Result<Vec<Vec<Option<Distance>>>, GraphError> {
        let n = curves.len();
        let mut cache = AnchorCache::new();
        let mut known: HashMap<(&NormalCurve, &NormalCurve), Option<Distance>> = HashMap::new();
        let mut out = vec![vec![None; n]; n];
        for x in 0..n {
            for y in x..n {
                let (a, b) = (&curves[x], &curves[y]);
                let d = match known.get(&(a, b)) {
                    Some(d) => *d,
                    None => {
                        let d = match self.solve(a, b, cap, false, &mut cache) {
                            Ok((d, _)) => Some(d),
                            Err(GraphError::Unreachable(_)) => None,
                            Err(e) => return Err(e),
                        };
                        known.insert((a, b), d);
                        known.insert((b, a), d);
                        d
                    }
                };
                out[x][y] = d;
                out[y][x] = d;
            }
        }
        close_under_triangle(&mut out, cap);
        Ok(out)
    }

    /// A shortest path inside the universe, endpoints included.
    pub fn geodesic(&self, x: &NormalCurve, y: &NormalCurve, cap: u32) -> Result<Vec<NormalCurve>, GraphError> {
        let i = self.index_of(x).ok_or(GraphError::NotInUniverse)?;
        let j = self.index_of(y).ok_or(GraphError::NotInUniverse)?;
        if self.dist[i][j] > cap {
            return Err(GraphError::Unreachable(cap));
        }
        Ok(self.universe_path(i, j).into_iter().map(|k| self.universe[k].clone()).collect())
    }

    /// A path realizing [`CurveGraphIndex::distance_ext`], endpoints
    /// included.
    pub fn geodesic_ext(&self, x: &NormalCurve, y: &NormalCurve, cap: u32) -> Result<Vec<NormalCurve>, GraphError> {
        match self.solve(x, y, cap, true, &mut AnchorCache::new())? {
            (_, Some(p)) => Ok(p),
            (d, None) => Err(GraphError::NoWitness(d.value)),
        }
    }

    /// `(x, y)_p = (d(x, p) + d(y, p) - d(x, y)) / 2` from certified
    /// distances.
    pub fn gromov_product(
        &self,
        x: &NormalCurve,
        y: &NormalCurve,
        p: &NormalCurve,
        cap: u32,
    ) -> Result<Rational, GraphError> {
        let dxp = self.distance_ext(x, p, cap)?.exact()? as i64;
        let dyp = self.distance_ext(y, p, cap)?.exact()? as i64;
        let dxy = self.distance_ext(x, y, cap)?.exact()? as i64;
        Ok(Rational::new(dxp + dyp - dxy, 2))
    }

    /// Symmetrized Hausdorff distance of two finite curve sets, with a flag
    /// telling whether every distance used was certified.
    pub fn hausdorff_distance(
        &self,
        a: &[NormalCurve],
        b: &[NormalCurve],
        cap: u32,
    ) -> Result<(u32, bool), GraphError> {
        let mut certified = true;
        let mut one_side = |p: &[NormalCurve], q: &[NormalCurve]| -> Result<u32, GraphError> {
            let mut worst = 0;
            for x in p {
                let mut best: Option<Distance> = None;
                for y in q {
                    let d = self.distance_ext(x, y, cap)?;
                    if best.is_none_or(|b| d.value < b.value) {
                        best = Some(d);
                    }
                }
                if let Some(d) = best {
                    certified &= d.certified();
                    worst = worst.max(d.value);
                }
            }
            Ok(worst)
        };
        let ab = one_side(a, b)?;
        let ba = one_side(b, a)?;
        Ok((ab.max(ba), certified))
    }

    /// Largest distance from a point of one side of a geodesic triangle to
    /// the union of the other two, over `samples` random universe triangles
    /// whose sides are certified. Returns the estimate and the number of
    /// triangles used.
    pub fn delta_estimate<R: Rng + ?Sized>(&self, samples: usize, cap: u32, rng: &mut R) -> Result<(u32, usize), GraphError> {
        let n = self.universe.len();
        if n == 0 {
            return Ok((0, 0));
        }
        let mut delta = 0;
        let mut used = 0;
        let mut tries = 0;
        while used < samples && tries < 50 * samples.max(1) {
            tries += 1;
            let ids = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
            let [x, y, z] = ids.map(|i| &self.universe[i]);
            let mut sides = Vec::with_capacity(3);
            let mut ok = true;
            for (p, q) in [(x, y), (y, z), (z, x)] {
                match self.distance(p, q, cap) {
                    Ok(d) if d.certified() => sides.push(self.geodesic(p, q, cap)?),
                    Ok(_) | Err(GraphError::Unreachable(_)) => ok = false,
                    Err(e) => return Err(e),
                }
            }
            if !ok {
                continue;
            }
            used += 1;
            for k in 0..3 {
                for p in &sides[k] {
                    let i = self.index_of(p).expect("geodesics stay in the universe");
                    let near = sides[(k + 1) % 3]
                        .iter()
                        .chain(&sides[(k + 2) % 3])
                        .map(|q| self.dist[i][self.index_of(q).unwrap()])
                        .min()
                        .unwrap_or(0);
                    delta = delta.max(near);
                }
            }
        }
        Ok((delta, used))
    }
}

fn bfs(adj: &[Vec<usize>], sources: &[usize], cap: u32) -> Vec<u32> {
    let mut depth = vec![UNREACHED; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        depth[s] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if depth[u] >= cap {
            continue;
        }
        for &w in &adj[u] {
            if depth[w] == UNREACHED {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    depth
}

/// Improves upper bounds through the other points of the set. Pairs not
/// within three keep their lower bound; pairs found only this way get the
/// filling bound.
fn close_under_triangle(m: &mut [Vec<Option<Distance>>], cap: u32) {
    let n = m.len();
    let mut up: Vec<Vec<u32>> = m
        .iter()
        .map(|row| row.iter().map(|d| d.map_or(UNREACHED, |d| d.value)).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = up[i][k].saturating_add(up[k][j]);
                if via < up[i][j] {
                    up[i][j] = via;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if up[i][j] > cap {
                continue;
            }
            let lower = m[i][j].map_or(3, |d| d.lower);
            m[i][j] = Some(Distance { value: up[i][j], lower });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::charts;

    fn index() -> CurveGraphIndex {
        CurveGraphIndex::build(&charts::s05(), 3, 2)
    }

    #[test]
    fn distance_basics() {
        let g = index();
        let u = g.universe();
        let x = &u[0];
        assert_eq!(g.distance(x, x, 4).unwrap(), Distance { value: 0, lower: 0 });
        let nb = g.neighbours(0)[0];
        let d = g.distance(x, &u[nb], 4).unwrap();
        assert_eq!(d.exact().unwrap(), 1);
        assert_eq!(g.geodesic(x, &u[nb], 4).unwrap(), vec![x.clone(), u[nb].clone()]);
    }

    #[test]
    fn two_i_plus_one_and_symmetry() {
        let g = index();
        let u = g.universe();
        for i in 0..u.len() {
            for j in 0..u.len() {
                let d = g.distance(&u[i], &u[j], 6).unwrap();
                assert_eq!(d, g.distance(&u[j], &u[i], 6).unwrap());
                if d.certified() {
                    assert!(d.value as u64 <= 2 * g.intersection(i, j) + 1);
                }
            }
        }
    }

    #[test]
    fn geodesic_is_a_disjoint_chain() {
        let g = index();
        let u = g.universe();
        let far = (1..u.len()).max_by_key(|&j| g.dist[0][j]).unwrap();
        let path = g.geodesic(&u[0], &u[far], 6).unwrap();
        assert_eq!(path.len() as u32 - 1, g.dist[0][far]);
        for w in path.windows(2) {
            assert_eq!(intersection_number(g.chart(), &w[0], &w[1]).unwrap(), 0);
        }
    }

    #[test]
    fn gromov_product_edge_cases() {
        let g = index();
        let u = g.universe();
        let (x, p) = (&u[0], &u[g.neighbours(0)[0]]);
        assert_eq!(g.gromov_product(x, x, p, 4).unwrap(), Rational::from(1));
        assert_eq!(g.gromov_product(x, p, p, 4).unwrap(), Rational::from(0));
    }

    #[test]
    fn hausdorff_of_equal_sets_is_zero() {
        let g = index();
        let a = g.universe()[..4].to_vec();
        assert_eq!(g.hausdorff_distance(&a, &a, 4).unwrap(), (0, true));
    }
}
