//! Vertex cycles: extreme rays of the measure cone of a track, realized as
//! curves, and the map `Phi` choosing one of them.
//!
//! Two independent enumerations are provided. [`extreme_rays`] runs the
//! double description method on the switch conditions, and
//! [`trainpath_cycles`] lists closed trainpaths using each oriented branch at
//! most once and keeps the connected ones that pass the twice rule. The two
//! sets coincide on every track the test suite reaches.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::surface::{intersection_number_multi, MultiCurve, NormalCurve, SurfaceError, Triangulation};
use crate::traintrack::{
    canonical_form, passes_twice_rule, path_measure, pushforward_curve, successors, total_mass, trainpaths,
    TrackError, TrainTrack,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexCycleError {
    #[error("track has no vertex cycles")]
    NoVertexCycles,
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexCycle {
    pub measure: Vec<i64>,
    pub curve: NormalCurve,
}

/// Primitive integral generators of the extreme rays of the measure cone.
pub fn extreme_rays(track: &TrainTrack) -> Vec<Vec<i64>> {
    crate::cone::extreme_rays(&track.switch_rows(), track.n_branches())
}

/// Measures of connected closed trainpaths through every branch at most
/// twice, and then in opposite directions.
pub fn trainpath_cycles(track: &TrainTrack) -> Vec<Vec<i64>> {
    let n = 2 * track.n_branches();
    let code = |(b, f): (usize, bool)| 2 * b + usize::from(f);
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|k| successors(track, k / 2, k % 2 == 1).into_iter().map(code).collect())
        .collect();
    let mut found = BTreeSet::new();
    let mut used = vec![false; n];
    let mut path = Vec::with_capacity(n);
    // every closed path is listed once, from its least oriented branch
    fn dfs(
        start: usize,
        succ: &[Vec<usize>],
        used: &mut [bool],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for &x in &succ[last] {
            if x == start {
                out.push(path.clone());
            } else if x > start && !used[x] {
                used[x] = true;
                path.push(x);
                dfs(start, succ, used, path, out);
                path.pop();
                used[x] = false;
            }
        }
    }
    let mut closed = Vec::new();
    for s in 0..n {
        used[s] = true;
        path.push(s);
        dfs(s, &succ, &mut used, &mut path, &mut closed);
        path.pop();
        used[s] = false;
    }
    for p in closed {
        let tp: Vec<(usize, bool)> = p.iter().map(|&k| (k / 2, k % 2 == 1)).collect();
        let mu = path_measure(track, &tp);
        if found.contains(&mu) {
            continue;
        }
        if let Ok(strands) = trainpaths(track, &mu) {
            if strands.len() == 1 && passes_twice_rule(track, &strands[0]) {
                found.insert(mu);
            }
        }
    }
    found.into_iter().collect()
}

/// Result of comparing the two enumerations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub rays: Vec<Vec<i64>>,
    pub trainpaths: Vec<Vec<i64>>,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.rays == self.trainpaths
    }
}

pub fn cross_check(track: &TrainTrack) -> CrossCheck {
    CrossCheck {
        rays: extreme_rays(track),
        trainpaths: trainpath_cycles(track),
    }
}

/// Extreme rays paired with the curves they carry.
pub fn vertex_cycles(track: &TrainTrack, chart: &Triangulation) -> Result<Vec<VertexCycle>, VertexCycleError> {
    extreme_rays(track)
        .into_iter()
        .map(|measure| {
            let curve = pushforward_curve(track, chart, &measure).map_err(|e| match e {
                TrackError::NotConnectedTrainpath(k) => TrackError::RealizationFailure(format!(
                    "vertex cycle {measure:?} splits into {k} strand cycles"
                )),
                other => other,
            })?;
            Ok(VertexCycle { measure, curve })
        })
        .collect()
}

/// The vertex cycle whose measure is least after canonical relabeling.
/// Automorphic relabelings are all tried and ties go to the least curve.
pub fn phi_cycle(track: &TrainTrack, chart: &Triangulation) -> Result<VertexCycle, VertexCycleError> {
    let cycles = vertex_cycles(track, chart)?;
    let form = canonical_form(track);
    let mut best: Option<(Vec<i64>, &VertexCycle)> = None;
    for r in &form.starts {
        for vc in &cycles {
            let key = r.apply(&vc.measure);
            let better = match &best {
                None => true,
                Some((k, b)) => (&key, &vc.curve) < (k, &b.curve),
            };
            if better {
                best = Some((key, vc));
            }
        }
    }
    best.map(|(_, vc)| vc.clone()).ok_or(VertexCycleError::NoVertexCycles)
}

pub fn phi(track: &TrainTrack, chart: &Triangulation) -> Result<NormalCurve, VertexCycleError> {
    phi_cycle(track, chart).map(|vc| vc.curve)
}

/// Outcome of the intersection bound `i(c, xi) <= 2 mass(mu)` against every
/// vertex cycle `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionBoundOutcome {
    pub holds: bool,
    pub bound: i64,
    pub max_intersection: u64,
    /// The vertex cycle attaining the maximum.
    pub witness: Option<VertexCycle>,
}

pub fn corollary23_check(
    track: &TrainTrack,
    chart: &Triangulation,
    mu: &[i64],
    c: &MultiCurve,
) -> Result<IntersectionBoundOutcome, VertexCycleError> {
    intersection_bound_against(&vertex_cycles(track, chart)?, chart, mu, c)
}

/// [`corollary23_check`] with precomputed vertex cycles.
pub fn intersection_bound_against(
    cycles: &[VertexCycle],
    chart: &Triangulation,
    mu: &[i64],
    c: &MultiCurve,
) -> Result<IntersectionBoundOutcome, VertexCycleError> {
    let bound = 2 * total_mass(mu);
    let mut max_intersection = 0;
    let mut witness = None;
    for xi in cycles {
        let i = intersection_number_multi(chart, c, &MultiCurve::single(xi.curve.clone()))?;
        if witness.is_none() || i > max_intersection {
            max_intersection = i;
            witness = Some(xi.clone());
        }
    }
    Ok(IntersectionBoundOutcome {
        holds: max_intersection as i128 <= bound as i128,
        bound,
        max_intersection,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::{adapted_track, Builtin};

    #[test]
    fn pants_curves_are_vertex_cycles() {
        for b in Builtin::ALL {
            let a = adapted_track(b).unwrap();
            let vc = vertex_cycles(&a.track, &a.chart()).unwrap();
            for (nu, p) in a.pants_measures.iter().zip(&a.pants) {
                assert!(vc.iter().any(|v| &v.measure == nu && &v.curve == p), "{b}");
            }
            assert!(vc.iter().all(|v| total_mass(&v.measure) <= 24));
        }
    }

    #[test]
    fn enumerations_agree_on_adapted_tracks() {
        for b in Builtin::ALL {
            let a = adapted_track(b).unwrap();
            assert!(cross_check(&a.track).agree(), "{b}");
        }
    }

    #[test]
    fn phi_is_deterministic() {
        let a = adapted_track(Builtin::S05).unwrap();
        let chart = a.chart();
        assert_eq!(phi(&a.track, &chart).unwrap(), phi(&a.track, &chart).unwrap());
    }

    #[test]
    fn doubled_cycle_is_not_connected() {
        let a = adapted_track(Builtin::S05).unwrap();
        let twice: Vec<i64> = a.pants_measures[0].iter().map(|x| 2 * x).collect();
        assert_eq!(
            crate::traintrack::is_vertex_cycle_by_trainpath(&a.track, &twice),
            Err(TrackError::NotConnectedTrainpath(2))
        );
    }

    #[test]
    fn pants_measure_passes_own_bound() {
        let a = adapted_track(Builtin::S12).unwrap();
        let chart = a.chart();
        let c = MultiCurve::single(a.pants[0].clone());
        let out = corollary23_check(&a.track, &chart, &a.pants_measures[0], &c).unwrap();
        assert!(out.holds);
        assert!(out.witness.is_some());
    }
}
