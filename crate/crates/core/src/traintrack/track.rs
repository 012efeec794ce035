//! Combinatorial train tracks.
//!
//! Branch `b` has half-branches `2b` (end 0) and `2b + 1` (end 1). Every
//! switch splits its half-branches into side `A` and side `B`; the
//! counterclockwise order around the switch is side `B` as stored followed by
//! side `A` as stored. Drawing a switch with side `B` pointing north, side
//! `A` is stored west to east and side `B` east to west.

use serde::{Deserialize, Serialize};

use super::TrackError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[inline]
pub fn half(branch: usize, end: usize) -> usize {
    2 * branch + end
}

#[inline]
pub fn branch_of(h: usize) -> usize {
    h / 2
}

#[inline]
pub fn end_of(h: usize) -> usize {
    h % 2
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Switch {
    #[serde(rename = "sideA")]
    pub side_a: Vec<usize>,
    #[serde(rename = "sideB")]
    pub side_b: Vec<usize>,
}

impl Switch {
    pub fn new(side_a: Vec<usize>, side_b: Vec<usize>) -> Self {
        Switch { side_a, side_b }
    }

    pub fn side(&self, s: Side) -> &[usize] {
        match s {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }

    pub fn valence(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    /// Counterclockwise cyclic order of half-branches.
    pub fn ccw(&self) -> Vec<usize> {
        self.side_b.iter().chain(&self.side_a).copied().collect()
    }

    /// Half-branches of a side listed west to east.
    pub fn west_to_east(&self, s: Side) -> Vec<usize> {
        match s {
            Side::A => self.side_a.clone(),
            Side::B => self.side_b.iter().rev().copied().collect(),
        }
    }
}

/// Placement of a track in a fixed chart: every switch sits in a triangle
/// and every branch is a walk of darts from the triangle of its end 0 to the
/// triangle of its end 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub location: Vec<usize>,
    pub words: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainTrack {
    switches: Vec<Switch>,
    n_branches: usize,
    hb_switch: Vec<usize>,
    hb_side: Vec<Side>,
    realization: Option<Realization>,
}

impl TrainTrack {
    pub fn new(
        switches: Vec<Switch>,
        n_branches: usize,
        realization: Option<Realization>,
    ) -> Result<Self, TrackError> {
        let mut hb_switch = vec![usize::MAX; 2 * n_branches];
        let mut hb_side = vec![Side::A; 2 * n_branches];
        for (s, sw) in switches.iter().enumerate() {
            if sw.side_a.is_empty() || sw.side_b.is_empty() {
                return Err(TrackError::BadTrack(format!("switch {s} has an empty side")));
            }
            for side in [Side::A, Side::B] {
                for &h in sw.side(side) {
                    if h >= 2 * n_branches {
                        return Err(TrackError::BadTrack(format!(
                            "half-branch {h} out of range at switch {s}"
                        )));
                    }
                    if hb_switch[h] != usize::MAX {
                        return Err(TrackError::BadTrack(format!("half-branch {h} used twice")));
                    }
                    hb_switch[h] = s;
                    hb_side[h] = side;
                }
            }
        }
        if let Some(h) = hb_switch.iter().position(|&s| s == usize::MAX) {
            return Err(TrackError::BadTrack(format!("half-branch {h} is not attached")));
        }
        if let Some(r) = &realization {
            if r.location.len() != switches.len() || r.words.len() != n_branches {
                return Err(TrackError::BadTrack("realization size mismatch".into()));
            }
        }
        Ok(TrainTrack {
            switches,
            n_branches,
            hb_switch,
            hb_side,
            realization,
        })
    }

    pub fn n_branches(&self) -> usize {
        self.n_branches
    }

    pub fn n_switches(&self) -> usize {
        self.switches.len()
    }

    pub fn switches(&self) -> &[Switch] {
        &self.switches
    }

    pub fn switch(&self, s: usize) -> &Switch {
        &self.switches[s]
    }

    #[inline]
    pub fn switch_of(&self, h: usize) -> usize {
        self.hb_switch[h]
    }

    #[inline]
    pub fn side_of(&self, h: usize) -> Side {
        self.hb_side[h]
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub(crate) fn with_realization(mut self, r: Option<Realization>) -> Self {
        self.realization = r;
        self
    }

    /// Every switch is bivalent or trivalent, and a trivalent switch has one
    /// half-branch on its large side.
    pub fn is_generic(&self) -> bool {
        self.switches.iter().all(|s| s.valence() <= 3)
    }

    pub fn check_generic(&self) -> Result<(), TrackError> {
        match self.switches.iter().position(|s| s.valence() > 3) {
            Some(s) => Err(TrackError::NonGeneric(s)),
            None => Ok(()),
        }
    }

    /// True iff `h` is alone on its side of a trivalent switch.
    pub fn is_large_half(&self, h: usize) -> bool {
        let sw = &self.switches[self.hb_switch[h]];
        sw.valence() == 3 && sw.side(self.hb_side[h]).len() == 1
    }

    pub fn is_large(&self, b: usize) -> bool {
        let (h0, h1) = (half(b, 0), half(b, 1));
        self.is_large_half(h0)
            && self.is_large_half(h1)
            && self.hb_switch[h0] != self.hb_switch[h1]
    }

    pub fn large_branches(&self) -> Result<Vec<usize>, TrackError> {
        self.check_generic()?;
        Ok((0..self.n_branches).filter(|&b| self.is_large(b)).collect())
    }

    /// Switch-condition rows: `+1` on side `A`, `-1` on side `B`.
    pub fn switch_rows(&self) -> Vec<Vec<i64>> {
        self.switches
            .iter()
            .map(|sw| {
                let mut row = vec![0i64; self.n_branches];
                for &h in &sw.side_a {
                    row[branch_of(h)] += 1;
                }
                for &h in &sw.side_b {
                    row[branch_of(h)] -= 1;
                }
                row
            })
            .collect()
    }

    /// Number of complementary regions and the cusp count of each, from the
    /// ribbon structure.
    pub fn complementary_cusps(&self) -> Vec<usize> {
        let n = 2 * self.n_branches;
        let mut pos = vec![(0usize, 0usize); n];
        let cyc: Vec<Vec<usize>> = self.switches.iter().map(|s| s.ccw()).collect();
        for (s, order) in cyc.iter().enumerate() {
            for (k, &h) in order.iter().enumerate() {
                pos[h] = (s, k);
            }
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for h0 in 0..n {
            if seen[h0] {
                continue;
            }
            let mut h = h0;
            let mut cusps = 0;
            loop {
                seen[h] = true;
                let o = h ^ 1;
                let (s, k) = pos[o];
                let next = cyc[s][(k + 1) % cyc[s].len()];
                if self.hb_side[o] == self.hb_side[next] {
                    cusps += 1;
                }
                h = next;
                if h == h0 {
                    break;
                }
            }
            out.push(cusps);
        }
        out
    }

    pub fn to_json(&self, chart: Option<&crate::surface::Triangulation>) -> TrackJson {
        let realization = match (&self.realization, chart) {
            (Some(r), Some(ch)) => Some(
                r.words
                    .iter()
                    .enumerate()
                    .map(|(b, w)| (b.to_string(), w.iter().map(|&d| ch.edge(d)).collect()))
                    .collect(),
            ),
            _ => None,
        };
        TrackJson {
            switches: self.switches.clone(),
            branches: (0..self.n_branches).map(|b| [half(b, 0), half(b, 1)]).collect(),
            realization,
            placement: self.realization.clone(),
        }
    }

    pub fn from_json(j: &TrackJson) -> Result<Self, TrackError> {
        for (b, pair) in j.branches.iter().enumerate() {
            if *pair != [half(b, 0), half(b, 1)] {
                return Err(TrackError::BadTrack(format!(
                    "branch {b} must list half-branches [{}, {}]",
                    half(b, 0),
                    half(b, 1)
                )));
            }
        }
        TrainTrack::new(j.switches.clone(), j.branches.len(), j.placement.clone())
    }
}

/// Serialized track. `realization` lists the edges crossed by each branch;
/// `placement` carries the exact dart walks needed to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackJson {
    pub switches: Vec<Switch>,
    pub branches: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<std::collections::BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<Realization>,
}
