//! Projectivized `Phi` coordinates along a sequence, next to the distance
//! from the first stage. A finite shadow of convergence; nothing is
//! asserted about limits.

use std::io::Write;

use serde::Serialize;

use super::{phi_path, SplittingError, SplittingSequence};
use crate::curvegraph::{CurveGraphIndex, Distance};
use crate::scalar::{fmt_ratio, ratio_serde, Rational};
use crate::traintrack::{total_mass, SplitMove};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    pub stage: usize,
    /// The split that produced this stage.
    pub mv: Option<SplitMove>,
    pub phi: Vec<u32>,
    /// `phi` divided by its total weight.
    #[serde(serialize_with = "ratio_serde::seq")]
    pub normalized: Vec<Rational>,
    /// `None` past the search radius.
    pub d_from_start: Option<Distance>,
    pub mass: i64,
}

pub fn convergence_diagnostic(
    seq: &SplittingSequence,
    index: &CurveGraphIndex,
    cap: u32,
) -> Result<Vec<ConvergenceRow>, SplittingError> {
    let path = phi_path(seq, index.chart())?;
    let m = index.distance_matrix(&path.curves, cap)?;
    Ok(path
        .curves
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let w = i64::try_from(c.weight()).expect("weight fits i64");
            ConvergenceRow {
                stage: j,
                mv: j.checked_sub(1).map(|k| seq.moves[k]),
                phi: c.coords().to_vec(),
                normalized: c.coords().iter().map(|&x| Rational::new(i64::from(x), w)).collect(),
                d_from_start: m[0][j],
                mass: total_mass(&seq.preimages[j]),
            }
        })
        .collect())
}

fn join<T>(xs: &[T], f: impl Fn(&T) -> String) -> String {
    xs.iter().map(f).collect::<Vec<_>>().join(" ")
}

/// One line per stage: stage, move, phiCurve, dFromStart,
/// massOfGuidePreimage, plus certification and normalized coordinates.
pub fn write_convergence_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "stage",
        "move",
        "phiCurve",
        "dFromStart",
        "massOfGuidePreimage",
        "dCertified",
        "phiNormalized",
    ])?;
    for r in rows {
        w.write_record([
            r.stage.to_string(),
            r.mv.map(|m| m.to_string()).unwrap_or_default(),
            join(&r.phi, |x| x.to_string()),
            r.d_from_start.map(|d| d.value.to_string()).unwrap_or_default(),
            r.mass.to_string(),
            r.d_from_start.map(|d| d.certified().to_string()).unwrap_or_default(),
            join(&r.normalized, fmt_ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}
