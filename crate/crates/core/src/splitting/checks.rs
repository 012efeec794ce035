//! The image of a splitting sequence under `Phi` and its coarse geometry in
//! the curve graph.

use num_traits::Zero;

use super::{SplittingError, SplittingSequence};
use crate::curvegraph::{CurveGraphIndex, Distance, GraphError};
use crate::scalar::Rational;
use crate::surface::{NormalCurve, Triangulation};
use crate::vertexcycles::phi;

/// `Phi(tau_j)` for every stage `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiPath {
    pub curves: Vec<NormalCurve>,
}

pub fn phi_path(seq: &SplittingSequence, chart: &Triangulation) -> Result<PhiPath, SplittingError> {
    let curves = seq
        .tracks
        .iter()
        .map(|t| phi(t, chart))
        .collect::<Result<_, _>>()?;
    Ok(PhiPath { curves })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LipschitzOutcome {
    /// Largest distance between consecutive stages.
    pub max: u32,
    /// Whether every consecutive distance met its lower bound.
    pub certified: bool,
    pub steps: usize,
}

/// Largest curve-graph distance between `Phi` of consecutive tracks.
pub fn lipschitz_check(path: &PhiPath, index: &CurveGraphIndex, cap: u32) -> Result<LipschitzOutcome, SplittingError> {
    let mut out = LipschitzOutcome {
        max: 0,
        certified: true,
        steps: path.curves.len().saturating_sub(1),
    };
    for w in path.curves.windows(2) {
        let d = index.distance_ext(&w[0], &w[1], cap)?;
        out.max = out.max.max(d.value);
        out.certified &= d.certified();
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitOutcome {
    /// Least `L` on the grid of sixteenths for which the path admits a
    /// monotone `L`-quasigeodesic parametrization.
    pub q_fit: Rational,
    /// Largest distance from a path point to a geodesic between the ends.
    pub fellow: u32,
    pub certified: bool,
    pub points: usize,
}

const GRID: i64 = 16;

/// Fits the `Phi`-path with a monotone reparametrization.
///
/// Point `i` gets a time `t_i` with `t_i <= t_{i+1}`, and every pair `i < j`
/// must satisfy `d/L - L <= t_j - t_i <= L d + L`. These are difference
/// constraints, so feasibility is a negative cycle test. Only the path's
/// vertices are constrained.
pub fn quasigeodesic_fit(path: &PhiPath, index: &CurveGraphIndex, cap: u32) -> Result<FitOutcome, SplittingError> {
    let n = path.curves.len();
    let first = &path.curves[0];
    let last = &path.curves[n - 1];
    // without a witness path, the endpoints alone stand in for the geodesic
    let (geo, mut certified) = match index.geodesic_ext(first, last, cap) {
        Ok(g) => (g, true),
        Err(GraphError::Unreachable(_) | GraphError::NoWitness(_)) => (vec![first.clone(), last.clone()], false),
        Err(e) => return Err(e.into()),
    };
    let mut all = path.curves.clone();
    all.extend(geo.iter().cloned());
    let m = index.distance_matrix(&all, cap)?;
    let get = |i: usize, j: usize| -> Result<Distance, GraphError> { m[i][j].ok_or(GraphError::Unreachable(cap)) };

    let mut d = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = get(i, j)?;
            certified &= x.certified();
            d[i][j] = x.value;
            d[j][i] = x.value;
        }
    }
    let mut fellow = 0;
    for i in 0..n {
        let mut best: Option<Distance> = None;
        for g in n..all.len() {
            let x = get(i, g)?;
            if best.is_none_or(|b| x.value < b.value) {
                best = Some(x);
            }
        }
        let b = best.expect("a geodesic has an endpoint");
        certified &= b.certified();
        fellow = fellow.max(b.value);
    }

    // grid indices: `lo` infeasible (or below 1), `hi` feasible;
    // feasibility is monotone in L
    let (mut lo, mut hi) = (GRID - 1, GRID);
    while !feasible(&d, Rational::new(hi, GRID)) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if feasible(&d, Rational::new(mid, GRID)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(FitOutcome {
        q_fit: Rational::new(hi, GRID),
        fellow,
        certified,
        points: n,
    })
}

/// Bellman-Ford on the constraint graph: edge `i -> j` of weight `c` for
/// `t_j - t_i <= c`, started from a virtual source at distance zero.
fn feasible(d: &[Vec<u32>], l: Rational) -> bool {
    let n = d.len();
    let mut edges = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i + 1..n {
            let dij = Rational::from(i64::from(d[i][j]));
            edges.push((i, j, l * dij + l));
            edges.push((j, i, l - dij / l));
        }
        if i + 1 < n {
            edges.push((i + 1, i, Rational::zero()));
        }
    }
    let mut dist = vec![Rational::zero(); n];
    for round in 0..=n {
        let mut changed = false;
        for &(a, b, w) in &edges {
            let cand = dist[a] + w;
            if cand < dist[b] {
                dist[b] = cand;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
        if round == n {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;

    fn line(n: usize) -> Vec<Vec<u32>> {
        (0..n)
            .map(|i| (0..n).map(|j| i.abs_diff(j) as u32).collect())
            .collect()
    }

    #[test]
    fn geodesics_fit_with_one() {
        assert!(feasible(&line(6), Rational::one()));
    }

    #[test]
    fn backtracking_needs_larger_constant() {
        // 0 1 2 1 0 1 2: out and back twice
        let pos = [0i64, 1, 2, 1, 0, 1, 2];
        let d: Vec<Vec<u32>> = pos
            .iter()
            .map(|a| pos.iter().map(|b| (a - b).unsigned_abs() as u32).collect())
            .collect();
        assert!(!feasible(&d, Rational::one()));
        assert!(feasible(&d, Rational::from(3)));
    }

    #[test]
    fn constant_path_is_feasible() {
        let d = vec![vec![0u32; 5]; 5];
        assert!(feasible(&d, Rational::one()));
    }
}
