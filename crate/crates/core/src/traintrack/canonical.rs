//! Canonical relabeling of train tracks.
//!
//! A traversal from a chosen half-branch visits switches breadth first and
//! numbers branches in the order they are met. Each switch is listed
//! counterclockwise starting with the side that contains its entry half, so
//! the A/B letters of the input do not affect the result. The least code over
//! all starting half-branches is the canonical code; every start reaching it
//! gives a canonical relabeling, and those differ by automorphisms.

use std::collections::VecDeque;

use super::track::{branch_of, end_of, half, Realization, Switch, TrainTrack};
use super::TrackError;
use crate::surface::Triangulation;

/// Old-to-new maps of one relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relabeling {
    /// New id of each old branch.
    pub branch: Vec<usize>,
    /// Whether each old branch has its ends swapped.
    pub flipped: Vec<bool>,
    /// New id of each old switch.
    pub switch: Vec<usize>,
    /// New switches, in the new numbering.
    switches: Vec<Switch>,
}

impl Relabeling {
    /// Measure in the new numbering.
    pub fn apply<T: Clone>(&self, mu: &[T]) -> Vec<T> {
        let mut out = mu.to_vec();
        for (old, &new) in self.branch.iter().enumerate() {
            out[new] = mu[old].clone();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: Vec<usize>,
    /// Every relabeling attaining the code.
    pub starts: Vec<Relabeling>,
}

fn traverse(track: &TrainTrack, h0: usize) -> (Vec<usize>, Relabeling) {
    let nb = track.n_branches();
    let ns = track.n_switches();
    let mut branch = vec![usize::MAX; nb];
    let mut flipped = vec![false; nb];
    let mut switch = vec![usize::MAX; ns];
    let mut switches = Vec::with_capacity(ns);
    let mut code = Vec::with_capacity(3 * ns + 2 * nb);
    let mut queue = VecDeque::new();
    let mut next_switch = 0;
    let mut next_branch = 0;
    let mut enter = |s: usize, h: usize, queue: &mut VecDeque<(usize, usize)>, switch: &mut Vec<usize>| {
        if switch[s] == usize::MAX {
            switch[s] = next_switch;
            next_switch += 1;
            queue.push_back((s, h));
        }
    };
    enter(track.switch_of(h0), h0, &mut queue, &mut switch);
    while let Some((s, entry)) = queue.pop_front() {
        let sw = track.switch(s);
        let first = track.side_of(entry);
        let lead = sw.side(first.other()).len();
        let ccw = sw.ccw();
        // side B comes first in ccw; rotate so the entry's side leads
        let rotated: Vec<usize> = if first == super::track::Side::B {
            ccw.clone()
        } else {
            ccw[lead..].iter().chain(&ccw[..lead]).copied().collect()
        };
        let k = sw.side(first).len();
        let pos = rotated.iter().position(|&h| h == entry).unwrap();
        code.extend([k, rotated.len() - k, pos]);
        let mut new_halves = Vec::with_capacity(rotated.len());
        for &h in &rotated {
            let b = branch_of(h);
            if branch[b] == usize::MAX {
                branch[b] = next_branch;
                next_branch += 1;
                flipped[b] = end_of(h) == 1;
            }
            let new_end = end_of(h) ^ usize::from(flipped[b]);
            code.extend([branch[b], new_end]);
            new_halves.push(half(branch[b], new_end));
            let o = h ^ 1;
            enter(track.switch_of(o), o, &mut queue, &mut switch);
        }
        switches.push(Switch::new(new_halves[k..].to_vec(), new_halves[..k].to_vec()));
    }
    (
        code,
        Relabeling {
            branch,
            flipped,
            switch,
            switches,
        },
    )
}

/// Half-branches from which the canonical code is attained.
pub fn canonical_starts(track: &TrainTrack) -> Vec<usize> {
    canonical_form(track)
        .starts
        .iter()
        .map(|r| {
            let b = r.branch.iter().position(|&n| n == 0).unwrap();
            half(b, usize::from(r.flipped[b]))
        })
        .collect()
}

/// The canonical code and every relabeling that attains it.
///
/// # Panics
/// If the track is disconnected.
pub fn canonical_form(track: &TrainTrack) -> CanonicalForm {
    let mut best: Option<Vec<usize>> = None;
    let mut starts = Vec::new();
    for h0 in 0..2 * track.n_branches() {
        let (code, r) = traverse(track, h0);
        assert!(
            r.branch.iter().all(|&b| b != usize::MAX),
            "canonical form needs a connected track"
        );
        match best.as_ref().map(|b| code.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => starts.push(r),
            _ => {
                best = Some(code);
                starts = vec![r];
            }
        }
    }
    CanonicalForm {
        code: best.unwrap_or_default(),
        starts,
    }
}

pub fn canonical_code(track: &TrainTrack) -> Vec<usize> {
    canonical_form(track).code
}

/// Applies a relabeling. A realization is carried along, which needs the
/// chart whenever a branch is flipped.
pub fn relabel(track: &TrainTrack, r: &Relabeling, chart: Option<&Triangulation>) -> Result<TrainTrack, TrackError> {
    let realization = match track.realization() {
        None => None,
        Some(old) => {
            let mut location = vec![0; track.n_switches()];
            for (s, &n) in r.switch.iter().enumerate() {
                location[n] = old.location[s];
            }
            let mut words = vec![Vec::new(); track.n_branches()];
            for (b, &n) in r.branch.iter().enumerate() {
                words[n] = if r.flipped[b] {
                    let ch = chart.ok_or_else(|| {
                        TrackError::RealizationFailure("relabeling a realized track needs its chart".into())
                    })?;
                    old.words[b].iter().rev().map(|&d| ch.glue(d)).collect()
                } else {
                    old.words[b].clone()
                };
            }
            Some(Realization { location, words })
        }
    };
    TrainTrack::new(r.switches.clone(), track.n_branches(), realization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::{adapted_track, Builtin};

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        for b in Builtin::ALL {
            let a = adapted_track(b).unwrap();
            let chart = a.chart();
            let form = canonical_form(&a.track);
            assert!(!form.starts.is_empty());
            for r in &form.starts {
                let t = relabel(&a.track, r, Some(&chart)).unwrap();
                assert_eq!(canonical_code(&t), form.code);
                assert_eq!(t.complementary_cusps().len(), a.track.complementary_cusps().len());
            }
        }
    }

    #[test]
    fn relabeled_measure_satisfies_switch_conditions() {
        let a = adapted_track(Builtin::S05).unwrap();
        let r = &canonical_form(&a.track).starts[0];
        let t = relabel(&a.track, r, Some(&a.chart())).unwrap();
        for nu in &a.pants_measures {
            assert!(crate::traintrack::check_switch_conditions(&t, &r.apply(nu)).unwrap());
        }
    }
}
