//! Splits at large branches and the carrying matrices they induce.
//!
//! Picture the large branch `e` horizontal, running from `v` (end 0, west)
//! to `w` (end 1, east). The small side of `v` holds `a` (north) and `b`
//! (south); the small side of `w` holds `c` (north) and `d` (south). A left
//! split joins `a` to `c`, `b` to `d` and adds the diagonal from `a` to `d`;
//! a right split uses the diagonal from `b` to `c`. A central split drops
//! `e` and leaves the two bivalent switches `a|c` and `b|d`.
//!
//! Left and right splits reuse the id of `e` for the diagonal, so branch ids
//! are stable. A central split renumbers every branch above `e` down by one.

use std::fmt;
use std::str::FromStr;

use num_traits::FromPrimitive;
use serde::{Deserialize, Serialize};

use super::track::{branch_of, end_of, half, Realization, Side, Switch, TrainTrack};
use super::TrackError;
use crate::scalar::{from_int, Exact};
use crate::surface::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
    #[serde(rename = "C")]
    Central,
}

impl Direction {
    pub fn letter(self) -> char {
        match self {
            Direction::Left => 'L',
            Direction::Right => 'R',
            Direction::Central => 'C',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Direction {
    type Err = TrackError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" | "l" | "left" => Ok(Direction::Left),
            "R" | "r" | "right" => Ok(Direction::Right),
            "C" | "c" | "central" => Ok(Direction::Central),
            _ => Err(TrackError::BadTrack(format!("unknown split direction {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitMove {
    pub branch: usize,
    pub dir: Direction,
}

impl SplitMove {
    pub fn new(branch: usize, dir: Direction) -> Self {
        SplitMove { branch, dir }
    }
}

impl fmt::Display for SplitMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.dir, self.branch)
    }
}

/// Integer matrix sending measures on a carried track to measures on the
/// carrying track. Rows are branches of the carrying track.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarryingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl CarryingMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        CarryingMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Pushes a measure on the carried track to the carrying track.
    pub fn apply<T: Exact + FromPrimitive>(&self, mu: &[T]) -> Result<Vec<T>, TrackError> {
        if mu.len() != self.cols {
            return Err(TrackError::IndexMismatch {
                expected: self.cols,
                found: mu.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| match self.get(r, c) {
                    0 => acc,
                    k => acc + from_int::<T>(k) * mu[c].clone(),
                })
            })
            .collect())
    }

    /// Overflow-checked integer version of [`CarryingMatrix::apply`].
    pub fn apply_i64(&self, mu: &[i64]) -> Result<Vec<i64>, TrackError> {
        if mu.len() != self.cols {
            return Err(TrackError::IndexMismatch {
                expected: self.cols,
                found: mu.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                (0..self.cols).try_fold(0i64, |acc, c| {
                    self.get(r, c)
                        .checked_mul(mu[c])
                        .and_then(|x| acc.checked_add(x))
                        .ok_or(TrackError::Overflow)
                })
            })
            .collect()
    }

    /// `self * next`: carries measures of the track after `next` back to the
    /// track before `self`.
    pub fn compose(&self, next: &CarryingMatrix) -> Result<CarryingMatrix, TrackError> {
        if self.cols != next.rows {
            return Err(TrackError::IndexMismatch {
                expected: self.cols,
                found: next.rows,
            });
        }
        let mut data = vec![0i64; self.rows * next.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(r, k);
                if x == 0 {
                    continue;
                }
                for c in 0..next.cols {
                    let y = next.get(k, c);
                    if y != 0 {
                        let slot = &mut data[r * next.cols + c];
                        *slot = x
                            .checked_mul(y)
                            .and_then(|p| slot.checked_add(p))
                            .ok_or(TrackError::Overflow)?;
                    }
                }
            }
        }
        Ok(CarryingMatrix {
            rows: self.rows,
            cols: next.cols,
            data,
        })
    }
}

/// The neighbourhood of a large branch.
#[derive(Clone, Copy, Debug)]
struct Local {
    e: usize,
    v: usize,
    w: usize,
    side_v: Side,
    side_w: Side,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
}

fn local(track: &TrainTrack, e: usize) -> Result<Local, TrackError> {
    if e >= track.n_branches() || !track.is_large(e) {
        return Err(TrackError::NotLargeBranch(e));
    }
    let (h0, h1) = (half(e, 0), half(e, 1));
    let (v, w) = (track.switch_of(h0), track.switch_of(h1));
    let (side_v, side_w) = (track.side_of(h0), track.side_of(h1));
    // after the large half comes the first small half counterclockwise:
    // north at v, south at w
    let sv = track.switch(v).side(side_v.other());
    let sw = track.switch(w).side(side_w.other());
    Ok(Local {
        e,
        v,
        w,
        side_v,
        side_w,
        a: sv[0],
        b: sv[1],
        d: sw[0],
        c: sw[1],
    })
}

/// Result of one split.
#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub track: TrainTrack,
    pub carrying: CarryingMatrix,
    pub mv: SplitMove,
    /// New id of every old branch (`None` for the branch a central split
    /// removes).
    pub branch_map: Vec<Option<usize>>,
    /// The two switches that changed.
    pub touched: [usize; 2],
}

fn make_switch(side_large: Side, large: Vec<usize>, small: Vec<usize>) -> Switch {
    match side_large {
        Side::A => Switch::new(large, small),
        Side::B => Switch::new(small, large),
    }
}

/// Splits `track` at `mv.branch`. The realization, if any, is carried along
/// and needs the chart it lives in.
pub fn split(track: &TrainTrack, mv: SplitMove, chart: Option<&Triangulation>) -> Result<SplitOutcome, TrackError> {
    let l = local(track, mv.branch)?;
    let e = l.e;
    let (e0, e1) = (half(e, 0), half(e, 1));
    let (nv, nw, moved): (Switch, Switch, [(usize, bool); 2]) = match mv.dir {
        // `true`: the half moved from v to loc(w); `false`: from w to loc(v)
        Direction::Left => (
            make_switch(l.side_v, vec![l.a], vec![e0, l.c]),
            make_switch(l.side_w, vec![l.d], vec![e1, l.b]),
            [(l.c, false), (l.b, true)],
        ),
        Direction::Right => (
            make_switch(l.side_v, vec![l.b], vec![l.d, e0]),
            make_switch(l.side_w, vec![l.c], vec![l.a, e1]),
            [(l.a, true), (l.d, false)],
        ),
        Direction::Central => (
            make_switch(l.side_v, vec![l.a], vec![l.c]),
            make_switch(l.side_w, vec![l.d], vec![l.b]),
            [(l.c, false), (l.b, true)],
        ),
    };
    let nb = track.n_branches();
    let central = mv.dir == Direction::Central;
    let renum = |b: usize| -> Option<usize> {
        if !central {
            Some(b)
        } else if b == e {
            None
        } else if b > e {
            Some(b - 1)
        } else {
            Some(b)
        }
    };
    let renum_h = |h: usize| half(renum(branch_of(h)).expect("removed branch is not attached"), end_of(h));
    let mut switches: Vec<Switch> = track.switches().to_vec();
    switches[l.v] = nv;
    switches[l.w] = nw;
    if central {
        for s in &mut switches {
            s.side_a = s.side_a.iter().map(|&h| renum_h(h)).collect();
            s.side_b = s.side_b.iter().map(|&h| renum_h(h)).collect();
        }
    }
    let new_nb = if central { nb - 1 } else { nb };

    // carrying matrix: each moved half drags its branch across e once
    let branch_map: Vec<Option<usize>> = (0..nb).map(renum).collect();
    let mut data = vec![0i64; nb * new_nb];
    for (old, new) in branch_map.iter().enumerate() {
        if let Some(n) = *new {
            data[old * new_nb + n] = 1;
        }
    }
    for &(h, _) in &moved {
        let n = renum(branch_of(h)).unwrap();
        data[e * new_nb + n] += 1;
    }
    let carrying = CarryingMatrix {
        rows: nb,
        cols: new_nb,
        data,
    };

    let realization = match (track.realization(), chart) {
        (None, _) => None,
        (Some(_), None) => {
            return Err(TrackError::RealizationFailure(
                "splitting a realized track needs its chart".into(),
            ))
        }
        (Some(r), Some(ch)) => Some(split_realization(r, ch, &l, &moved, &branch_map, new_nb)),
    };
    let new_track = TrainTrack::new(switches, new_nb, realization)?;
    Ok(SplitOutcome {
        track: new_track,
        carrying,
        mv,
        branch_map,
        touched: [l.v, l.w],
    })
}

fn split_realization(
    r: &Realization,
    chart: &Triangulation,
    l: &Local,
    moved: &[(usize, bool); 2],
    branch_map: &[Option<usize>],
    new_nb: usize,
) -> Realization {
    let fwd = r.words[l.e].clone();
    let back: Vec<usize> = fwd.iter().rev().map(|&d| chart.glue(d)).collect();
    let mut words = vec![Vec::new(); new_nb];
    for (old, new) in branch_map.iter().enumerate() {
        let Some(n) = *new else { continue };
        let mut pre: Vec<usize> = Vec::new();
        let mut post: Vec<usize> = Vec::new();
        for &(h, to_w) in moved {
            if branch_of(h) != old {
                continue;
            }
            // path from the new location of the half to its old one, or back
            let path = if to_w { &back } else { &fwd };
            if end_of(h) == 0 {
                pre = path.iter().copied().chain(pre).collect();
            } else {
                let rev = if to_w { &fwd } else { &back };
                post.extend_from_slice(rev);
            }
        }
        let mut w = pre;
        w.extend_from_slice(&r.words[old]);
        w.extend(post);
        words[n] = free_reduce(chart, w);
    }
    Realization {
        location: r.location.clone(),
        words,
    }
}

/// Cancels adjacent dart pairs that cross one edge back and forth.
pub(crate) fn free_reduce(chart: &Triangulation, darts: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(darts.len());
    for d in darts {
        match out.last() {
            Some(&top) if chart.glue(top) == d => {
                out.pop();
            }
            _ => out.push(d),
        }
    }
    out
}

/// The split direction whose result carries `mu`.
pub fn compatible_split_direction<T: Exact>(track: &TrainTrack, e: usize, mu: &[T]) -> Result<Direction, TrackError> {
    if mu.len() != track.n_branches() {
        return Err(TrackError::IndexMismatch {
            expected: track.n_branches(),
            found: mu.len(),
        });
    }
    let l = local(track, e)?;
    if mu[e].is_zero() {
        return Err(TrackError::ZeroOnLargeBranch(e));
    }
    let (ma, mc) = (&mu[branch_of(l.a)], &mu[branch_of(l.c)]);
    Ok(match ma.cmp(mc) {
        std::cmp::Ordering::Greater => Direction::Left,
        std::cmp::Ordering::Less => Direction::Right,
        std::cmp::Ordering::Equal => Direction::Central,
    })
}

/// The measure on the split track that the carrying matrix sends to `mu`.
pub fn preimage<T: Exact>(track: &TrainTrack, mv: SplitMove, mu: &[T]) -> Result<Vec<T>, TrackError> {
    if mu.len() != track.n_branches() {
        return Err(TrackError::IndexMismatch {
            expected: track.n_branches(),
            found: mu.len(),
        });
    }
    let l = local(track, mv.branch)?;
    let (ma, mc) = (mu[branch_of(l.a)].clone(), mu[branch_of(l.c)].clone());
    let mut out = mu.to_vec();
    match mv.dir {
        Direction::Left => out[l.e] = ma - mc,
        Direction::Right => out[l.e] = mc - ma,
        Direction::Central => {
            if ma != mc {
                return Err(TrackError::NotCarried);
            }
            out.remove(l.e);
        }
    }
    if out.iter().any(|x| x.is_negative()) {
        return Err(TrackError::NotCarried);
    }
    Ok(out)
}

/// Large branches of a split track, updated from those of the track it came
/// from. Only branches touching the two changed switches are re-evaluated.
pub fn large_branches_after_split(old_large: &[usize], outcome: &SplitOutcome) -> Vec<usize> {
    let t = &outcome.track;
    let mut touched: Vec<usize> = outcome
        .touched
        .iter()
        .flat_map(|&s| t.switch(s).ccw())
        .map(branch_of)
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let mut out: Vec<usize> = old_large
        .iter()
        .filter_map(|&b| outcome.branch_map[b])
        .filter(|b| touched.binary_search(b).is_err())
        .collect();
    out.extend(touched.into_iter().filter(|&b| t.is_large(b)));
    out.sort_unstable();
    out
}

/// True iff some measure is positive on every branch, i.e. the extreme rays
/// of the measure cone together cover every branch.
pub fn recurrence_check(track: &TrainTrack) -> bool {
    let rays = crate::cone::extreme_rays(&track.switch_rows(), track.n_branches());
    (0..track.n_branches()).all(|b| rays.iter().any(|r| r[b] > 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::{adapted_track, Builtin};

    #[test]
    fn left_and_right_keep_counts() {
        let a = adapted_track(Builtin::S05).unwrap();
        let chart = a.chart();
        for e in a.track.large_branches().unwrap() {
            for dir in [Direction::Left, Direction::Right] {
                let o = split(&a.track, SplitMove::new(e, dir), Some(&chart)).unwrap();
                assert_eq!(o.track.n_branches(), 12);
                assert_eq!(o.track.n_switches(), 8);
                assert_eq!(o.carrying.rows(), 12);
                let full = o.track.large_branches().unwrap();
                let inc = large_branches_after_split(&a.track.large_branches().unwrap(), &o);
                assert_eq!(full, inc);
            }
        }
    }

    #[test]
    fn central_drops_one_branch() {
        let a = adapted_track(Builtin::S12).unwrap();
        let e = a.track.large_branches().unwrap()[0];
        let o = split(&a.track, SplitMove::new(e, Direction::Central), Some(&a.chart())).unwrap();
        assert_eq!(o.track.n_branches(), 11);
        assert_eq!(o.carrying.cols(), 11);
        assert_eq!(o.branch_map[e], None);
    }

    #[test]
    fn split_of_small_branch_is_rejected() {
        let a = adapted_track(Builtin::S05).unwrap();
        let small = (0..12).find(|&b| !a.track.is_large(b)).unwrap();
        let err = split(&a.track, SplitMove::new(small, Direction::Left), None).unwrap_err();
        assert_eq!(err, TrackError::NotLargeBranch(small));
    }

    #[test]
    fn zero_weight_large_branch() {
        let a = adapted_track(Builtin::S05).unwrap();
        let e = a.track.large_branches().unwrap()[0];
        let mu = vec![0i64; 12];
        assert_eq!(compatible_split_direction(&a.track, e, &mu), Err(TrackError::ZeroOnLargeBranch(e)));
    }

    #[test]
    fn move_json() {
        let m = SplitMove::new(3, Direction::Left);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"branch":3,"dir":"L"}"#);
        assert_eq!(serde_json::from_str::<SplitMove>(&s).unwrap(), m);
    }
}
