//! Experiment configuration. The seed determines every sample.

use std::path::PathBuf;

use curvetrack::traintrack::Builtin;
use serde::Serialize;

use crate::HarnessError;

/// How many objects each check draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Samples {
    /// Guided sequences shared by the track, Lipschitz and fellow-travel checks.
    pub sequences: usize,
    /// Sequences for the Lipschitz check, the shared ones first.
    pub lipschitz: usize,
    /// Sequences for the fellow-travel check, the shared ones first.
    pub fellow: usize,
    /// Distinct tracks for the vertex-cycle cross-check.
    pub tracks: usize,
    /// Carried measures for the intersection bound.
    pub measures: usize,
    /// Sequences passing the distance-3 filter.
    pub stages: usize,
    /// Random curve pairs for symmetry and bilinearity.
    pub oracle_pairs: usize,
    /// Pairs compared against the bigon-reduction oracle.
    pub oracle_cross: usize,
    /// Geodesic triangles for the thinness estimate.
    pub triangles: usize,
    /// Pairs scanned for nonempty level sets.
    pub scans: usize,
}

impl Samples {
    pub const DEFAULT: Samples = Samples {
        sequences: 50,
        lipschitz: 200,
        fellow: 150,
        tracks: 200,
        measures: 1000,
        stages: 30,
        oracle_pairs: 500,
        oracle_cross: 100,
        triangles: 20,
        scans: 4,
    };

    /// Every count set to `n`.
    pub fn uniform(n: usize) -> Samples {
        Samples {
            sequences: n,
            lipschitz: n,
            fellow: n,
            tracks: n,
            measures: n,
            stages: n,
            oracle_pairs: n,
            oracle_cross: n,
            triangles: n,
            scans: n,
        }
    }
}

impl Default for Samples {
    fn default() -> Self {
        Samples::DEFAULT
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    #[serde(serialize_with = "ser_surface")]
    pub surface: Builtin,
    /// Coordinate bound of the curve universe.
    pub bound: u32,
    /// Search radius for distances.
    pub cap: u32,
    /// Maximum length of a guided sequence.
    pub steps: usize,
    pub samples: Samples,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub workers: usize,
}

fn ser_surface<S: serde::Serializer>(b: &Builtin, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(b.id())
}

impl ExperimentConfig {
    pub fn new(surface: Builtin, seed: u64) -> Self {
        ExperimentConfig {
            surface,
            bound: 4,
            cap: 10,
            steps: 60,
            samples: Samples::DEFAULT,
            seed,
            out: None,
            workers: 1,
        }
    }

    pub fn chart_name(&self) -> String {
        self.surface.chart().name().to_string()
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: &str| Err(HarnessError::ConfigInvalid(m.to_string()));
        if self.bound == 0 {
            return bad("bound must be positive");
        }
        if self.cap == 0 {
            return bad("cap must be positive");
        }
        if self.workers == 0 {
            return bad("workers must be positive");
        }
        Ok(())
    }
}

pub fn parse_surface(s: &str) -> Result<Builtin, HarnessError> {
    Builtin::ALL
        .into_iter()
        .find(|b| b.id() == s)
        .ok_or_else(|| HarnessError::ConfigInvalid(format!("unknown surface '{s}'")))
}
