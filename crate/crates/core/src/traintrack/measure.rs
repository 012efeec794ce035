use serde::{Deserialize, Serialize};

use super::track::{branch_of, TrainTrack};
use super::TrackError;
use crate::scalar::Exact;

/// Nonnegative weights on the branches of one track.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TransverseMeasure<T> {
    weights: Vec<T>,
}

impl<T: Exact> TransverseMeasure<T> {
    /// Wraps a weight vector after checking sign and switch conditions.
    pub fn new(track: &TrainTrack, weights: Vec<T>) -> Result<Self, TrackError> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(TrackError::NegativeWeight);
        }
        if !check_switch_conditions(track, &weights)? {
            return Err(TrackError::SwitchCondition);
        }
        Ok(TransverseMeasure { weights })
    }

    pub fn zero(track: &TrainTrack) -> Self {
        TransverseMeasure {
            weights: vec![T::zero(); track.n_branches()],
        }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<T> {
        self.weights
    }

    pub fn get(&self, b: usize) -> &T {
        &self.weights[b]
    }

    pub fn total_mass(&self) -> T {
        total_mass(&self.weights)
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    pub fn add(&self, other: &Self) -> Self {
        TransverseMeasure {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        TransverseMeasure {
            weights: self.weights.iter().map(|a| a.clone() * k.clone()).collect(),
        }
    }
}

/// Sum of the weights.
pub fn total_mass<T: Exact>(weights: &[T]) -> T {
    weights.iter().fold(T::zero(), |acc, w| acc + w.clone())
}

/// True iff the two sides of every switch carry equal weight.
pub fn check_switch_conditions<T: Exact>(track: &TrainTrack, w: &[T]) -> Result<bool, TrackError> {
    if w.len() != track.n_branches() {
        return Err(TrackError::IndexMismatch {
            expected: track.n_branches(),
            found: w.len(),
        });
    }
    Ok(track.switches().iter().all(|sw| {
        let sa = sw
            .side_a
            .iter()
            .fold(T::zero(), |acc, &h| acc + w[branch_of(h)].clone());
        let sb = sw
            .side_b
            .iter()
            .fold(T::zero(), |acc, &h| acc + w[branch_of(h)].clone());
        sa == sb
    }))
}
