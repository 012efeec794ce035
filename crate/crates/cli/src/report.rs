//! Run reports: one row per check, plus the measured constants.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::time::Duration;

use curvetrack::curvegraph::ConstantsReport;
use curvetrack::scalar::fmt_ratio;
use curvetrack::Rational;
use serde::{Serialize, Serializer};

use crate::config::ExperimentConfig;

/// A named value reported by a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Metric {
    Int(i64),
    Ratio(Rational),
    Bool(bool),
    Text(String),
}

impl Metric {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Metric::Int(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_ratio(&self) -> Option<Rational> {
        match self {
            Metric::Int(x) => Some(Rational::from(*x)),
            Metric::Ratio(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Metric::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Int(x) => write!(f, "{x}"),
            Metric::Ratio(r) => f.write_str(&fmt_ratio(r)),
            Metric::Bool(b) => write!(f, "{b}"),
            Metric::Text(s) => f.write_str(s),
        }
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Metric::Int(x) => s.serialize_i64(*x),
            Metric::Bool(b) => s.serialize_bool(*b),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl From<usize> for Metric {
    fn from(x: usize) -> Self {
        Metric::Int(x as i64)
    }
}

impl From<u32> for Metric {
    fn from(x: u32) -> Self {
        Metric::Int(i64::from(x))
    }
}

impl From<i64> for Metric {
    fn from(x: i64) -> Self {
        Metric::Int(x)
    }
}

impl From<Rational> for Metric {
    fn from(r: Rational) -> Self {
        Metric::Ratio(r)
    }
}

impl From<bool> for Metric {
    fn from(b: bool) -> Self {
        Metric::Bool(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    VertexCycleCrossCheck,
    IntersectionBound,
    DistanceBound,
    Lipschitz,
    FellowTravel,
    StageBounds,
    LevelSetScan,
    Carrying,
    IntersectionOracle,
    StructuralCounts,
}

impl CheckId {
    pub fn name(self) -> &'static str {
        match self {
            CheckId::VertexCycleCrossCheck => "vertex-cycle-cross-check",
            CheckId::IntersectionBound => "intersection-bound",
            CheckId::DistanceBound => "distance-bound",
            CheckId::Lipschitz => "lipschitz",
            CheckId::FellowTravel => "fellow-travel",
            CheckId::StageBounds => "stage-bounds",
            CheckId::LevelSetScan => "level-set-scan",
            CheckId::Carrying => "carrying",
            CheckId::IntersectionOracle => "intersection-oracle",
            CheckId::StructuralCounts => "structural-counts",
        }
    }
}

/// Outcome of one check. Distance queries that hit the search radius are
/// counted in `truncated`, never in `violations`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub samples: usize,
    pub violations: usize,
    pub truncated: usize,
    pub passed: bool,
    pub metrics: BTreeMap<String, Metric>,
}

impl CheckResult {
    pub fn new(id: CheckId) -> Self {
        CheckResult {
            id,
            samples: 0,
            violations: 0,
            truncated: 0,
            passed: true,
            metrics: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Metric>) {
        self.metrics.insert(key.to_string(), value.into());
    }

    pub fn metric(&self, key: &str) -> Option<&Metric> {
        self.metrics.get(key)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub checks: Vec<CheckResult>,
    pub constants: ConstantsReport,
    /// Wall time per check; left out of the CSV.
    #[serde(serialize_with = "ser_timing")]
    pub timing: Vec<(CheckId, Duration)>,
}

fn ser_timing<S: Serializer>(t: &[(CheckId, Duration)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(t.len()))?;
    for (id, d) in t {
        m.serialize_entry(id.name(), &d.as_secs_f64())?;
    }
    m.end()
}

impl RunReport {
    pub fn check(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One row per check. Deterministic for a fixed configuration.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["surface", "seed", "check", "samples", "violations", "truncated", "passed", "metrics"])?;
        for c in &self.checks {
            let metrics = c
                .metrics
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            w.write_record([
                self.config.surface.id().to_string(),
                self.config.seed.to_string(),
                c.id.name().to_string(),
                c.samples.to_string(),
                c.violations.to_string(),
                c.truncated.to_string(),
                c.passed.to_string(),
                metrics,
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
