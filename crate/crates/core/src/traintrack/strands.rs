//! Strand decomposition of integral measures and pushforward to curves.
//!
//! A branch of weight `n` carries `n` parallel strands, numbered left to
//! right when looking from end 0 towards end 1. At a switch the strands of
//! one side continue, without crossing, to the other side.

use super::track::{branch_of, end_of, half, Side, TrainTrack};
use super::TrackError;
use crate::surface::{collect_coords, cyclic_reduce, validate_u32, MultiCurve, NormalCurve, Triangulation};

/// A closed walk along branches: `(branch, forward)` where forward means
/// travelling from end 0 to end 1.
pub type Trainpath = Vec<(usize, bool)>;

/// True iff west-to-east order at the switch of `h` reverses the strand
/// numbering of its branch.
#[inline]
fn reversed(track: &TrainTrack, h: usize) -> bool {
    (end_of(h) == 0 && track.side_of(h) == Side::A) || (end_of(h) == 1 && track.side_of(h) == Side::B)
}

struct Layout {
    /// offset of each half-branch inside the west-to-east order of its side
    offset: Vec<u64>,
}

fn layout(track: &TrainTrack, mu: &[u64]) -> Layout {
    let mut offset = vec![0u64; 2 * track.n_branches()];
    for sw in track.switches() {
        for side in [Side::A, Side::B] {
            let mut acc = 0;
            for h in sw.west_to_east(side) {
                offset[h] = acc;
                acc += mu[branch_of(h)];
            }
        }
    }
    Layout { offset }
}

/// The strand after `(b, k, forward)` crosses its terminal switch.
fn step(track: &TrainTrack, mu: &[u64], lay: &Layout, b: usize, k: u64, fwd: bool) -> (usize, u64, bool) {
    let h = half(b, if fwd { 1 } else { 0 });
    let n = mu[b];
    let q = if reversed(track, h) { n - 1 - k } else { k };
    let p = lay.offset[h] + q;
    let sw = track.switch(track.switch_of(h));
    let other = track.side_of(h).other();
    for h2 in sw.west_to_east(other) {
        let b2 = branch_of(h2);
        let (lo, n2) = (lay.offset[h2], mu[b2]);
        if p >= lo && p < lo + n2 {
            let q2 = p - lo;
            let k2 = if reversed(track, h2) { n2 - 1 - q2 } else { q2 };
            return (b2, k2, end_of(h2) == 0);
        }
    }
    unreachable!("switch condition violated at switch {}", track.switch_of(h))
}

fn to_u64(track: &TrainTrack, mu: &[i64]) -> Result<Vec<u64>, TrackError> {
    if mu.len() != track.n_branches() {
        return Err(TrackError::IndexMismatch {
            expected: track.n_branches(),
            found: mu.len(),
        });
    }
    if mu.iter().any(|&x| x < 0) {
        return Err(TrackError::NegativeWeight);
    }
    if !super::check_switch_conditions(track, mu)? {
        return Err(TrackError::SwitchCondition);
    }
    Ok(mu.iter().map(|&x| x as u64).collect())
}

/// Decomposes an integral measure into closed trainpaths, one per strand
/// cycle, in a deterministic order.
pub fn trainpaths(track: &TrainTrack, mu: &[i64]) -> Result<Vec<Trainpath>, TrackError> {
    let m = to_u64(track, mu)?;
    let lay = layout(track, &m);
    let mut seen: Vec<Vec<bool>> = m.iter().map(|&x| vec![false; x as usize]).collect();
    let mut out = Vec::new();
    for b0 in 0..track.n_branches() {
        for k0 in 0..m[b0] {
            if seen[b0][k0 as usize] {
                continue;
            }
            let mut path = Vec::new();
            let (mut b, mut k, mut fwd) = (b0, k0, true);
            loop {
                seen[b][k as usize] = true;
                path.push((b, fwd));
                let next = step(track, &m, &lay, b, k, fwd);
                (b, k, fwd) = next;
                if b == b0 && k == k0 && fwd {
                    break;
                }
            }
            out.push(path);
        }
    }
    Ok(out)
}

/// Branch visit counts of a trainpath.
pub fn path_measure(track: &TrainTrack, p: &[(usize, bool)]) -> Vec<i64> {
    let mut v = vec![0i64; track.n_branches()];
    for &(b, _) in p {
        v[b] += 1;
    }
    v
}

/// Every branch is crossed at most twice, and twice only in opposite
/// directions.
pub fn passes_twice_rule(track: &TrainTrack, p: &[(usize, bool)]) -> bool {
    let mut fwd = vec![0u32; track.n_branches()];
    let mut bwd = vec![0u32; track.n_branches()];
    for &(b, f) in p {
        if f {
            fwd[b] += 1;
        } else {
            bwd[b] += 1;
        }
    }
    fwd.iter().zip(&bwd).all(|(&x, &y)| x <= 1 && y <= 1)
}

/// The trainpath test for a single connected integral measure.
pub fn is_vertex_cycle_by_trainpath(track: &TrainTrack, mu: &[i64]) -> Result<bool, TrackError> {
    let paths = trainpaths(track, mu)?;
    if paths.len() != 1 {
        return Err(TrackError::NotConnectedTrainpath(paths.len()));
    }
    Ok(passes_twice_rule(track, &paths[0]))
}

/// Dart walk of a trainpath through the realization.
pub fn path_word(track: &TrainTrack, chart: &Triangulation, p: &[(usize, bool)]) -> Result<Vec<usize>, TrackError> {
    let r = track
        .realization()
        .ok_or_else(|| TrackError::RealizationFailure("track has no realization".into()))?;
    let mut w = Vec::new();
    for &(b, f) in p {
        if f {
            w.extend_from_slice(&r.words[b]);
        } else {
            w.extend(r.words[b].iter().rev().map(|&d| chart.glue(d)));
        }
    }
    Ok(w)
}

/// Curve carried along a closed trainpath.
pub fn push_path(track: &TrainTrack, chart: &Triangulation, p: &[(usize, bool)]) -> Result<NormalCurve, TrackError> {
    let w = cyclic_reduce(chart, &path_word(track, chart, p)?);
    let coords = collect_coords(chart, &w);
    validate_u32(chart, coords).map_err(|e| {
        TrackError::RealizationFailure(format!("trainpath {p:?} pushes to an invalid curve: {e}"))
    })
}

/// Multicurve carried by an integral measure.
pub fn pushforward(track: &TrainTrack, chart: &Triangulation, mu: &[i64]) -> Result<MultiCurve, TrackError> {
    let mut m = MultiCurve::new();
    for p in trainpaths(track, mu)? {
        m.add(push_path(track, chart, &p)?, 1);
    }
    if m.is_empty() {
        return Err(TrackError::RealizationFailure("zero measure carries no curve".into()));
    }
    Ok(m)
}

/// Curve carried by a connected integral measure.
pub fn pushforward_curve(track: &TrainTrack, chart: &Triangulation, mu: &[i64]) -> Result<NormalCurve, TrackError> {
    let paths = trainpaths(track, mu)?;
    if paths.len() != 1 {
        return Err(TrackError::NotConnectedTrainpath(paths.len()));
    }
    push_path(track, chart, &paths[0])
}

/// Oriented branches that may follow `(b, forward)` along a trainpath.
pub fn successors(track: &TrainTrack, b: usize, fwd: bool) -> Vec<(usize, bool)> {
    let h = half(b, if fwd { 1 } else { 0 });
    let sw = track.switch(track.switch_of(h));
    sw.side(track.side_of(h).other())
        .iter()
        .map(|&h2| (branch_of(h2), end_of(h2) == 0))
        .collect()
}
