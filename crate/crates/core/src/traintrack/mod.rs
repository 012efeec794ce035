//! Train tracks with realizations in a fixed chart, transverse measures,
//! splits and carrying matrices, and the built-in pants-adapted tracks.

mod adapted;
mod canonical;
mod dual;
mod measure;
mod split;
mod strands;
mod track;

pub use adapted::{adapted_track, builtin_template, AdaptedTrack, Builtin, Connector, Decomposition};
pub use canonical::{canonical_code, canonical_form, canonical_starts, relabel, CanonicalForm, Relabeling};
pub use dual::{derive_chart, Derived};
pub use measure::{check_switch_conditions, total_mass, TransverseMeasure};
pub use split::{
    compatible_split_direction, large_branches_after_split, preimage, recurrence_check, split,
    CarryingMatrix, Direction, SplitMove, SplitOutcome,
};
pub use strands::{
    is_vertex_cycle_by_trainpath, passes_twice_rule, path_measure, path_word, push_path,
    pushforward, pushforward_curve, successors, trainpaths, Trainpath,
};
pub use track::{branch_of, end_of, half, Realization, Side, Switch, TrackJson, TrainTrack};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackError {
    #[error("weight vector has {found} entries, track has {expected} branches")]
    IndexMismatch { expected: usize, found: usize },
    #[error("switch {0} has valence above three")]
    NonGeneric(usize),
    #[error("branch {0} is not large")]
    NotLargeBranch(usize),
    #[error("measure vanishes on large branch {0}")]
    ZeroOnLargeBranch(usize),
    #[error("measure is not carried by the split track")]
    NotCarried,
    #[error("negative weight")]
    NegativeWeight,
    #[error("switch condition fails")]
    SwitchCondition,
    #[error("measure decomposes into {0} trainpaths")]
    NotConnectedTrainpath(usize),
    #[error("realization failure: {0}")]
    RealizationFailure(String),
    #[error("track is not adapted: {0}")]
    NotAdapted(String),
    #[error("measure is not integral")]
    NonIntegral,
    #[error("unknown surface '{0}'")]
    UnknownSurface(String),
    #[error("malformed track: {0}")]
    BadTrack(String),
    #[error("arithmetic overflow")]
    Overflow,
}
