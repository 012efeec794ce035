//! Numerical verification of the comparison between vertex cycles along a
//! splitting sequence and the pants decomposition of an adapted track.

use num_traits::Zero;
use serde::Serialize;

use super::{SplittingError, SplittingSequence};
use crate::curvegraph::membership;
use crate::scalar::{ratio_serde, Rational};
use crate::surface::{intersection_number, pair_fills, NormalCurve, Triangulation};
use crate::traintrack::{total_mass, AdaptedTrack};
use crate::vertexcycles::{vertex_cycles, VertexCycle};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: usize,
    /// Every vertex cycle fills with every vertex cycle of the first track.
    pub admissible: bool,
    /// Best constant at this stage, maximized over the test curves.
    #[serde(serialize_with = "ratio_serde::opt")]
    pub k: Option<Rational>,
    #[serde(serialize_with = "ratio_serde::opt")]
    pub q: Option<Rational>,
}

/// Stages whose vertex cycles meet `L_s(rho, P, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaEntry {
    #[serde(serialize_with = "ratio_serde::one")]
    pub s: Rational,
    pub stages: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageOutcome {
    pub stages: Vec<StageReport>,
    /// Uniform constant over admissible stages and test curves.
    #[serde(serialize_with = "ratio_serde::one")]
    pub k: Rational,
    /// Largest ratio of `mu0` mass to `i(xi, P)` over admissible vertex
    /// cycles pushed to the first track.
    #[serde(serialize_with = "ratio_serde::one")]
    pub k0: Rational,
    /// Vertex cycles with `i(xi, P)` above the `mu0` mass.
    pub inequality_violations: usize,
    /// Pants curves `gamma_i` with `i(xi, gamma_i)` different from the
    /// `mu0` weight on the large connector branch.
    pub large_weight_mismatches: usize,
    #[serde(serialize_with = "ratio_serde::one")]
    pub q: Rational,
    /// One scan per test curve that meets `P`.
    pub kappa: Vec<Vec<KappaEntry>>,
    /// The smallest `s` reaches the first stage, for every scan.
    pub kappa_start: bool,
    /// The largest `s` reaches the last stage, for every scan.
    pub kappa_end: bool,
    /// A nondecreasing choice of covered stages exists along the grid.
    pub kappa_monotone: bool,
}

fn ratio(p: u64, q: u64) -> Rational {
    Rational::new(to_i64(p), to_i64(q))
}

fn to_i64(x: u64) -> i64 {
    i64::try_from(x).expect("intersection number fits i64")
}

fn pants_intersection(chart: &Triangulation, c: &NormalCurve, pants: &[NormalCurve]) -> Result<Vec<u64>, SplittingError> {
    pants
        .iter()
        .map(|g| intersection_number(chart, c, g).map_err(|e| SplittingError::Graph(e.into())))
        .collect()
}

fn fill(chart: &Triangulation, a: &NormalCurve, b: &NormalCurve) -> Result<bool, SplittingError> {
    let i = intersection_number(chart, a, b).map_err(|e| SplittingError::Graph(e.into()))?;
    if i == 0 {
        return Ok(false);
    }
    pair_fills(chart, a, b).map_err(|e| SplittingError::Graph(e.into()))
}

/// Checks the comparison along `seq`, which must start at `at.track`.
///
/// `rhos` are the test curves, vertex cycles of the last track; when empty,
/// all of them are used. `s_grid` must be ascending.
pub fn lemma25_verify(
    at: &AdaptedTrack,
    seq: &SplittingSequence,
    rhos: &[VertexCycle],
    s_grid: &[Rational],
) -> Result<StageOutcome, SplittingError> {
    let chart = at.chart();
    let m = seq.tracks.len() - 1;
    let vcs: Vec<Vec<VertexCycle>> = seq
        .tracks
        .iter()
        .map(|t| vertex_cycles(t, &chart))
        .collect::<Result<_, _>>()?;
    let rhos: Vec<VertexCycle> = if rhos.is_empty() { vcs[m].clone() } else { rhos.to_vec() };
    let rho_p: Vec<u64> = rhos
        .iter()
        .map(|r| Ok(pants_intersection(&chart, &r.curve, &at.pants)?.iter().sum()))
        .collect::<Result<_, SplittingError>>()?;
    let xi_p: Vec<Vec<Vec<u64>>> = vcs
        .iter()
        .map(|v| v.iter().map(|x| pants_intersection(&chart, &x.curve, &at.pants)).collect())
        .collect::<Result<_, _>>()?;
    let inter = |a: &NormalCurve, b: &NormalCurve| {
        intersection_number(&chart, a, b).map_err(|e| SplittingError::Graph(e.into()))
    };

    let mut stages = Vec::with_capacity(m + 1);
    let (mut k, mut k0, mut q) = (Rational::zero(), Rational::zero(), Rational::zero());
    let (mut violations, mut mismatches) = (0, 0);
    let mut any = false;
    for j in 0..=m {
        let mut admissible = j > 0;
        'pairs: for x in &vcs[j] {
            for z in &vcs[0] {
                if !admissible {
                    break 'pairs;
                }
                admissible = fill(&chart, &x.curve, &z.curve)?;
            }
        }
        let mut report = StageReport {
            stage: j,
            admissible,
            k: None,
            q: None,
        };
        if admissible {
            any = true;
            let to_start = seq.product(0, j)?;
            for (x, per) in vcs[j].iter().zip(&xi_p[j]) {
                let dec = at.decompose(&to_start.apply_i64(&x.measure)?)?;
                let mass = total_mass(&dec.mu0);
                let s: u64 = per.iter().sum();
                if s > 0 {
                    k0 = k0.max(Rational::new(mass, to_i64(s)));
                }
                if to_i64(s) > mass {
                    violations += 1;
                }
                mismatches += per.iter().zip(&dec.large_weights).filter(|(a, b)| to_i64(**a) != **b).count();
            }
            let to_stage = seq.product(j, m)?;
            for (rho, &rp) in rhos.iter().zip(&rho_p) {
                if rp == 0 {
                    continue;
                }
                let mut kj: Option<Rational> = None;
                for (x, per) in vcs[j].iter().zip(&xi_p[j]) {
                    let s: u64 = per.iter().sum();
                    let v = ratio(inter(&rho.curve, &x.curve)? * s, rp);
                    kj = Some(kj.map_or(v, |old| old.min(v)));
                }
                if let Some(kj) = kj {
                    k = k.max(kj);
                    report.k = Some(report.k.map_or(kj, |old| old.max(kj)));
                }
                let eta = to_stage.apply_i64(&rho.measure)?;
                let mut tmax = Rational::zero();
                for x in &vcs[j] {
                    let t = x
                        .measure
                        .iter()
                        .zip(&eta)
                        .filter(|(a, _)| **a > 0)
                        .map(|(a, b)| Rational::new(*b, *a))
                        .min();
                    if let Some(t) = t {
                        tmax = tmax.max(t);
                    }
                }
                if tmax > Rational::zero() {
                    let qj = Rational::from(total_mass(&eta)) / tmax;
                    q = q.max(qj);
                    report.q = Some(report.q.map_or(qj, |old| old.max(qj)));
                }
            }
        }
        stages.push(report);
    }
    if !any {
        return Err(SplittingError::NoAdmissibleStage);
    }

    let r = k.max(Rational::from(1));
    let mut kappa = Vec::new();
    let (mut kappa_start, mut kappa_end, mut kappa_monotone) = (true, true, true);
    for (rho, &rp) in rhos.iter().zip(&rho_p) {
        if rp == 0 {
            continue;
        }
        let mut counts = Vec::with_capacity(m + 1);
        for (v, ps) in vcs.iter().zip(&xi_p) {
            let mut row = Vec::with_capacity(v.len());
            for (x, per) in v.iter().zip(ps) {
                row.push((inter(&x.curve, &rho.curve)?, per.iter().sum::<u64>()));
            }
            counts.push(row);
        }
        let mut scan = Vec::with_capacity(s_grid.len());
        for s in s_grid {
            let mut covered = Vec::new();
            for (j, row) in counts.iter().enumerate() {
                let mut hit = false;
                for &(ix, ip) in row {
                    if membership(ix, ip, rp, s, &r)? {
                        hit = true;
                        break;
                    }
                }
                if hit {
                    covered.push(j);
                }
            }
            scan.push(KappaEntry { s: *s, stages: covered });
        }
        if let (Some(a), Some(b)) = (scan.first(), scan.last()) {
            kappa_start &= a.stages.contains(&0);
            kappa_end &= b.stages.contains(&m);
        }
        let mut prev = 0;
        for e in &scan {
            match e.stages.iter().find(|&&j| j >= prev) {
                Some(&j) => prev = j,
                None => kappa_monotone = false,
            }
        }
        kappa.push(scan);
    }
    Ok(StageOutcome {
        stages,
        k,
        k0,
        inequality_violations: violations,
        large_weight_mismatches: mismatches,
        q,
        kappa,
        kappa_start,
        kappa_end,
        kappa_monotone,
    })
}

/// Geometric grid `2^lo, ..., 2^hi`.
pub fn dyadic_grid(lo: i32, hi: i32) -> Vec<Rational> {
    (lo..=hi)
        .map(|e| {
            if e >= 0 {
                Rational::from(1i64 << e)
            } else {
                Rational::new(1, 1i64 << -e)
            }
        })
        .collect()
}
