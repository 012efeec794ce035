//! Batch harness: fixtures, experiments and the verification suite.

pub mod config;
pub mod experiments;
pub mod fixtures;
pub mod report;

use thiserror::Error;

pub use config::{parse_surface, ExperimentConfig, Samples};
pub use experiments::{sample_sequence, verify_all};
pub use fixtures::{emit_fixture, FIXTURES};
pub use report::{CheckId, CheckResult, Metric, RunReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("no carried guide found for task {0}")]
    NoGuide(u64),
    #[error(transparent)]
    Surface(#[from] curvetrack::surface::SurfaceError),
    #[error(transparent)]
    Track(#[from] curvetrack::traintrack::TrackError),
    #[error(transparent)]
    VertexCycle(#[from] curvetrack::vertexcycles::VertexCycleError),
    #[error(transparent)]
    Graph(#[from] curvetrack::curvegraph::GraphError),
    #[error(transparent)]
    Splitting(#[from] curvetrack::splitting::SplittingError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
