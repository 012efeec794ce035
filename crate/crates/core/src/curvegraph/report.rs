//! Measured stand-ins for the unnamed universal constants.

use serde::Serialize;

use crate::scalar::{ratio_serde, Rational};

/// One measured value with the sample it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measured {
    #[serde(serialize_with = "ratio_serde::one")]
    pub value: Rational,
    pub seed: u64,
    pub samples: usize,
    pub surface: String,
    /// False if any distance entering the value was only an upper bound.
    pub certified: bool,
}

impl Measured {
    pub fn new(value: Rational, seed: u64, samples: usize, surface: &str, certified: bool) -> Self {
        Measured {
            value,
            seed,
            samples,
            surface: surface.to_string(),
            certified,
        }
    }
}

/// Append-only record of measured constants; every entry keeps its
/// provenance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[allow(non_snake_case)]
pub struct ConstantsReport {
    pub D_vcycle_diam: Vec<Measured>,
    pub C_lipschitz: Vec<Measured>,
    pub Q_fit: Vec<Measured>,
    pub D_fellow_travel: Vec<Measured>,
    pub delta_estimate: Vec<Measured>,
    pub k_lemma25: Vec<Measured>,
    pub k0_pants: Vec<Measured>,
    pub q_vcycle_decomp: Vec<Measured>,
}

impl ConstantsReport {
    pub fn merge(&mut self, other: ConstantsReport) {
        self.D_vcycle_diam.extend(other.D_vcycle_diam);
        self.C_lipschitz.extend(other.C_lipschitz);
        self.Q_fit.extend(other.Q_fit);
        self.D_fellow_travel.extend(other.D_fellow_travel);
        self.delta_estimate.extend(other.delta_estimate);
        self.k_lemma25.extend(other.k_lemma25);
        self.k0_pants.extend(other.k0_pants);
        self.q_vcycle_decomp.extend(other.q_vcycle_decomp);
    }
}
