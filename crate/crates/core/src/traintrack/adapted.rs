//! Built-in complete tracks adapted to a pants decomposition.
//!
//! Each pants curve runs through a twist connector made of two switches
//! `s_{2i}` (sides `A = [L, b_i.1]`, `B = [e_i.0]`) and `s_{2i+1}` (sides
//! `A = [e_i.1]`, `B = [R, b_i.0]`). The branch `e_i` is large and the
//! pants curve is carried by `e_i + b_i`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dual::derive_chart;
use super::strands::pushforward_curve;
use super::track::{half, Switch, TrainTrack};
use super::TrackError;
use crate::scalar::Rational;
use crate::surface::{charts, NormalCurve, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builtin {
    S05,
    S12,
}

impl Builtin {
    pub const ALL: [Builtin; 2] = [Builtin::S05, Builtin::S12];

    pub fn id(self) -> &'static str {
        match self {
            Builtin::S05 => "s05",
            Builtin::S12 => "s12",
        }
    }

    pub fn chart(self) -> Triangulation {
        match self {
            Builtin::S05 => charts::s05(),
            Builtin::S12 => charts::s12(),
        }
    }
}

impl FromStr for Builtin {
    type Err = TrackError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "s05" | "s0,5" | "s_{0,5}" => Ok(Builtin::S05),
            "s12" | "s1,2" | "s_{1,2}" => Ok(Builtin::S12),
            _ => Err(TrackError::UnknownSurface(s.to_string())),
        }
    }
}

impl std::fmt::Display for Builtin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Branch ids of one twist connector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    /// The large branch `e_i`.
    pub large: usize,
    /// The marker branch `b_i`.
    pub marker: usize,
    pub branches: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct AdaptedTrack {
    pub surface: Builtin,
    pub track: TrainTrack,
    pub pants: Vec<NormalCurve>,
    /// Counting measure of each pants curve.
    pub pants_measures: Vec<Vec<i64>>,
    pub connectors: Vec<Connector>,
}

fn sw(a: &[(usize, usize)], b: &[(usize, usize)]) -> Switch {
    Switch::new(
        a.iter().map(|&(x, e)| half(x, e)).collect(),
        b.iter().map(|&(x, e)| half(x, e)).collect(),
    )
}

/// The unrealized template track of a built-in surface.
pub fn builtin_template(which: Builtin) -> TrainTrack {
    let switches = match which {
        Builtin::S05 => {
            let (e1, b1, e2, b2, r1, w1, r2, w3, la, lb, lc, be) =
                (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11);
            vec![
                sw(&[(la, 0), (b1, 1)], &[(e1, 0)]),
                sw(&[(e1, 1)], &[(r1, 0), (b1, 0)]),
                sw(&[(lc, 1), (b2, 1)], &[(e2, 0)]),
                sw(&[(e2, 1)], &[(r2, 0), (b2, 0)]),
                sw(&[(r1, 1)], &[(w1, 0), (w1, 1)]),
                sw(&[(r2, 1)], &[(w3, 0), (w3, 1)]),
                sw(&[(lb, 0)], &[(la, 1), (be, 0)]),
                sw(&[(lc, 0)], &[(lb, 1), (be, 1)]),
            ]
        }
        Builtin::S12 => {
            let (e1, b1, e2, b2, r2, w, l1, r1, l2, c12, c23, c31) =
                (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11);
            vec![
                sw(&[(l1, 0), (b1, 1)], &[(e1, 0)]),
                sw(&[(e1, 1)], &[(r1, 0), (b1, 0)]),
                sw(&[(l2, 0), (b2, 1)], &[(e2, 0)]),
                sw(&[(e2, 1)], &[(r2, 0), (b2, 0)]),
                sw(&[(r2, 1)], &[(w, 0), (w, 1)]),
                sw(&[(l1, 1)], &[(c12, 0), (c31, 1)]),
                sw(&[(r1, 1)], &[(c23, 0), (c12, 1)]),
                sw(&[(l2, 1)], &[(c31, 0), (c23, 1)]),
            ]
        }
    };
    TrainTrack::new(switches, 12, None).expect("built-in template is well formed")
}

/// The adapted track of a built-in surface, realized in its chart.
pub fn adapted_track(which: Builtin) -> Result<AdaptedTrack, TrackError> {
    let template = builtin_template(which);
    let derived = derive_chart(which.id(), &template)?;
    let chart = which.chart();
    if derived.chart != chart {
        return Err(TrackError::NotAdapted(format!(
            "derived chart differs from the built-in {} chart",
            which.id()
        )));
    }
    let track = derived.track;
    let connectors: Vec<Connector> = (0..chart.sig().complexity())
        .map(|i| Connector {
            large: 2 * i,
            marker: 2 * i + 1,
            branches: vec![2 * i, 2 * i + 1],
        })
        .collect();
    let mut pants = Vec::new();
    let mut pants_measures = Vec::new();
    for c in &connectors {
        let mut nu = vec![0i64; track.n_branches()];
        nu[c.large] = 1;
        nu[c.marker] = 1;
        pants.push(pushforward_curve(&track, &chart, &nu)?);
        pants_measures.push(nu);
    }
    Ok(AdaptedTrack {
        surface: which,
        track,
        pants,
        pants_measures,
        connectors,
    })
}

/// `mu = mu0 + sum n_i nu_i` with `mu0` vanishing on every marker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub mu0: Vec<i64>,
    pub n: Vec<i64>,
    /// `mu0` on each large connector branch.
    pub large_weights: Vec<i64>,
}

impl AdaptedTrack {
    pub fn chart(&self) -> Triangulation {
        self.surface.chart()
    }

    /// Splits off the pants curves carried in the twist connectors.
    pub fn decompose(&self, mu: &[i64]) -> Result<Decomposition, TrackError> {
        if mu.len() != self.track.n_branches() {
            return Err(TrackError::IndexMismatch {
                expected: self.track.n_branches(),
                found: mu.len(),
            });
        }
        if !super::check_switch_conditions(&self.track, mu)? {
            return Err(TrackError::SwitchCondition);
        }
        let mut mu0 = mu.to_vec();
        let mut n = Vec::with_capacity(self.connectors.len());
        for (c, nu) in self.connectors.iter().zip(&self.pants_measures) {
            let k = mu[c.marker];
            for (x, &y) in mu0.iter_mut().zip(nu) {
                *x -= k * y;
            }
            n.push(k);
        }
        if mu0.iter().any(|&x| x < 0) {
            return Err(TrackError::NotAdapted("decomposition leaves a negative weight".into()));
        }
        let large_weights = self.connectors.iter().map(|c| mu0[c.large]).collect();
        Ok(Decomposition {
            mu0,
            n,
            large_weights,
        })
    }

    /// Rational entry point; rejects non-integral weights.
    pub fn decompose_rational(&self, mu: &[Rational]) -> Result<Decomposition, TrackError> {
        let ints: Option<Vec<i64>> = mu
            .iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect();
        self.decompose(&ints.ok_or(TrackError::NonIntegral)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{disjoint, intersection_number};

    #[test]
    fn derivation_reproduces_builtin_charts() {
        for b in Builtin::ALL {
            let d = derive_chart(b.id(), &builtin_template(b)).unwrap();
            assert_eq!(d.chart, b.chart(), "{b}");
        }
    }

    #[test]
    fn structural_counts() {
        for b in Builtin::ALL {
            let a = adapted_track(b).unwrap();
            let sig = a.chart().sig();
            assert_eq!(a.track.n_branches(), sig.complete_branches());
            assert_eq!(a.track.n_switches(), sig.complete_switches());
            assert_eq!((a.track.n_branches(), a.track.n_switches()), (12, 8));
            let large = a.track.large_branches().unwrap();
            for c in &a.connectors {
                assert!(large.contains(&c.large), "{b}: e_{} not large", c.large);
            }
        }
    }

    #[test]
    fn pants_curves_are_distinct_and_disjoint() {
        for b in Builtin::ALL {
            let a = adapted_track(b).unwrap();
            let chart = a.chart();
            assert_eq!(a.pants.len(), 2);
            assert_ne!(a.pants[0], a.pants[1]);
            assert!(disjoint(&chart, &a.pants[0], &a.pants[1]));
            assert_eq!(intersection_number(&chart, &a.pants[0], &a.pants[1]).unwrap(), 0);
        }
    }

    #[test]
    fn decomposition_recovers_twist_counts() {
        let a = adapted_track(Builtin::S05).unwrap();
        let mut mu = vec![0i64; 12];
        for (k, nu) in a.pants_measures.iter().enumerate() {
            for (x, y) in mu.iter_mut().zip(nu) {
                *x += (k as i64 + 2) * y;
            }
        }
        let d = a.decompose(&mu).unwrap();
        assert_eq!(d.n, vec![2, 3]);
        assert!(d.mu0.iter().all(|&x| x == 0));
        let half: Vec<Rational> = mu.iter().map(|&x| Rational::new(x, 2)).collect();
        assert_eq!(a.decompose_rational(&half), Err(TrackError::NonIntegral));
    }
}
