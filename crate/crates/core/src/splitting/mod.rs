//! Splitting sequences guided by carried integral measures, and the checks
//! run along their images under `Phi`.

mod checks;
mod diagnostic;
mod stages;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curvegraph::GraphError;
use crate::surface::Triangulation;
use crate::traintrack::{
    canonical_form, check_switch_conditions, compatible_split_direction, preimage, split, total_mass, trainpaths,
    CarryingMatrix, Direction, SplitMove, TrackError, TrainTrack,
};
use crate::vertexcycles::{extreme_rays, VertexCycleError};

pub use checks::{lipschitz_check, phi_path, quasigeodesic_fit, FitOutcome, LipschitzOutcome, PhiPath};
pub use diagnostic::{convergence_diagnostic, write_convergence_csv, ConvergenceRow};
pub use stages::{dyadic_grid, lemma25_verify, KappaEntry, StageOutcome, StageReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    #[error("guide is not a measure on the starting track")]
    NotCarried,
    #[error("no large branch carries positive guide weight")]
    NoLargeBranchWithMass,
    #[error("no stage passes the distance-3 filter")]
    NoAdmissibleStage,
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    VertexCycle(#[from] VertexCycleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Why a sequence stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    /// The guide's preimage is a vertex cycle of the last track.
    VertexCycle,
    MaxSteps,
    /// Every large branch with guide weight is a tie; this is the least.
    CentralTie(usize),
    /// All requested rounds of a full splitting sequence ran.
    Rounds,
}

/// Choice of the large branch to split next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// The least large branch with positive guide weight.
    LeastLarge,
    /// A uniformly random one, from a seeded stream.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct SplittingSequence {
    pub tracks: Vec<TrainTrack>,
    pub moves: Vec<SplitMove>,
    pub matrices: Vec<CarryingMatrix>,
    /// The guide on `tracks[0]`.
    pub guide: Vec<i64>,
    /// The guide's preimage on every track.
    pub preimages: Vec<Vec<i64>>,
    pub halt: Halt,
    /// Zero-weight large branches passed over by full splitting rounds.
    pub skipped: usize,
}

impl SplittingSequence {
    fn start(track: &TrainTrack, guide: &[i64]) -> Result<Self, SplittingError> {
        if guide.len() != track.n_branches()
            || guide.iter().any(|&x| x < 0)
            || !check_switch_conditions(track, guide)?
        {
            return Err(SplittingError::NotCarried);
        }
        Ok(SplittingSequence {
            tracks: vec![track.clone()],
            moves: Vec::new(),
            matrices: Vec::new(),
            guide: guide.to_vec(),
            preimages: vec![guide.to_vec()],
            halt: Halt::MaxSteps,
            skipped: 0,
        })
    }

    /// Number of splits.
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn last_track(&self) -> &TrainTrack {
        self.tracks.last().expect("a sequence has a first track")
    }

    fn current(&self) -> &[i64] {
        self.preimages.last().expect("a sequence has a first measure")
    }

    fn push(&mut self, mv: SplitMove, chart: &Triangulation) -> Result<(), SplittingError> {
        let t = self.last_track();
        let mu = preimage(t, mv, self.current())?;
        let out = split(t, mv, Some(chart))?;
        self.tracks.push(out.track);
        self.moves.push(mv);
        self.matrices.push(out.carrying);
        self.preimages.push(mu);
        Ok(())
    }

    /// Carrying matrix from `tracks[j]` to `tracks[i]`, `i <= j`.
    pub fn product(&self, i: usize, j: usize) -> Result<CarryingMatrix, TrackError> {
        let mut m = CarryingMatrix::identity(self.tracks[i].n_branches());
        for k in i..j {
            m = m.compose(&self.matrices[k])?;
        }
        Ok(m)
    }

    /// Pushes every stage's preimage back to the first track and compares
    /// with the guide, both through the running product and step by step.
    pub fn verify_carrying(&self) -> Result<bool, TrackError> {
        let mut m = CarryingMatrix::identity(self.tracks[0].n_branches());
        for (k, mu) in self.preimages.iter().enumerate() {
            if k > 0 {
                m = m.compose(&self.matrices[k - 1])?;
            }
            if m.apply_i64(mu)? != self.guide {
                return Ok(false);
            }
            let mut step = mu.clone();
            for j in (0..k).rev() {
                step = self.matrices[j].apply_i64(&step)?;
            }
            if step != self.guide {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Total mass of the guide's preimage at each stage.
    pub fn masses(&self) -> Vec<i64> {
        self.preimages.iter().map(|m| total_mass(m)).collect()
    }
}

/// Splits along the guide until it becomes a vertex cycle, only ties remain
/// or `max_steps` splits were made. Large branches where the guide ties are
/// passed over while another large branch can be split.
pub fn run_splitting_sequence(
    track: &TrainTrack,
    chart: &Triangulation,
    guide: &[i64],
    max_steps: usize,
    policy: Policy,
) -> Result<SplittingSequence, SplittingError> {
    let mut seq = SplittingSequence::start(track, guide)?;
    let mut rng = match policy {
        Policy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Policy::LeastLarge => None,
    };
    loop {
        let t = seq.last_track();
        let mu = seq.current();
        if extreme_rays(t).iter().any(|r| r == mu) {
            seq.halt = Halt::VertexCycle;
            break;
        }
        if seq.len() >= max_steps {
            seq.halt = Halt::MaxSteps;
            break;
        }
        let mut candidates = Vec::new();
        let mut tie = None;
        for e in t.large_branches()? {
            if mu[e] == 0 {
                continue;
            }
            match compatible_split_direction(t, e, mu)? {
                Direction::Central => tie = tie.or(Some(e)),
                dir => candidates.push(SplitMove::new(e, dir)),
            }
        }
        let mv = match &mut rng {
            None => candidates.first().copied(),
            Some(r) => candidates.choose(r).copied(),
        };
        match (mv, tie) {
            (Some(mv), _) => seq.push(mv, chart)?,
            (None, Some(e)) => {
                seq.halt = Halt::CentralTie(e);
                break;
            }
            (None, None) => return Err(SplittingError::NoLargeBranchWithMass),
        }
    }
    Ok(seq)
}

/// `rounds` rounds, each splitting once at every large branch of the
/// round's first track, in canonical order. Large branches without guide
/// weight cannot be split compatibly and are skipped.
pub fn run_full_splitting_sequence(
    track: &TrainTrack,
    chart: &Triangulation,
    guide: &[i64],
    rounds: usize,
) -> Result<SplittingSequence, SplittingError> {
    let mut seq = SplittingSequence::start(track, guide)?;
    seq.halt = Halt::Rounds;
    'rounds: for _ in 0..rounds {
        let t = seq.last_track();
        let order = &canonical_form(t).starts[0].branch;
        let mut large = t.large_branches()?;
        large.sort_by_key(|&e| order[e]);
        for e in large {
            let mu = seq.current();
            if mu[e] == 0 {
                seq.skipped += 1;
                continue;
            }
            let dir = compatible_split_direction(seq.last_track(), e, mu)?;
            if dir == Direction::Central {
                seq.halt = Halt::CentralTie(e);
                break 'rounds;
            }
            seq.push(SplitMove::new(e, dir), chart)?;
        }
    }
    Ok(seq)
}

/// A random connected integral measure on `track`: a nonnegative
/// combination of vertex cycles with coefficients up to `max_coeff` whose
/// strands form a single cycle.
pub fn random_carried_curve<R: Rng + ?Sized>(
    track: &TrainTrack,
    rng: &mut R,
    max_coeff: i64,
    tries: usize,
) -> Option<Vec<i64>> {
    let rays = extreme_rays(track);
    for _ in 0..tries {
        let mut mu = vec![0i64; track.n_branches()];
        for r in &rays {
            let k = rng.gen_range(0..=max_coeff);
            for (x, y) in mu.iter_mut().zip(r) {
                *x += k * y;
            }
        }
        if mu.iter().all(|&x| x == 0) {
            continue;
        }
        if trainpaths(track, &mu).is_ok_and(|p| p.len() == 1) {
            return Some(mu);
        }
    }
    None
}

/// A carried curve whose guided sequence is long: a connected combination,
/// with positive coefficients up to `max_coeff`, of all vertex cycles at the
/// end of a random walk of `depth` splits, pushed back to `track`.
pub fn deep_carried_curve<R: Rng + ?Sized>(
    track: &TrainTrack,
    chart: &Triangulation,
    rng: &mut R,
    depth: usize,
    max_coeff: i64,
) -> Result<Vec<i64>, SplittingError> {
    let mut t = track.clone();
    let mut m = CarryingMatrix::identity(track.n_branches());
    for _ in 0..depth {
        let large = t.large_branches()?;
        let Some(&e) = large.choose(rng) else { break };
        let dir = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
        let out = split(&t, SplitMove::new(e, dir), Some(chart))?;
        m = m.compose(&out.carrying)?;
        t = out.track;
    }
    let rays = extreme_rays(&t);
    for _ in 0..DEEP_TRIES {
        let mut nu = vec![0i64; t.n_branches()];
        for r in &rays {
            let k = rng.gen_range(1..=max_coeff);
            for (x, y) in nu.iter_mut().zip(r) {
                *x += k * y;
            }
        }
        let mu = m.apply_i64(&nu)?;
        if trainpaths(track, &mu).is_ok_and(|p| p.len() == 1) {
            return Ok(mu);
        }
    }
    Err(SplittingError::NotCarried)
}

const DEEP_TRIES: usize = 200;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::{adapted_track, Builtin};

    #[test]
    fn vertex_cycle_guide_halts_at_once() {
        let a = adapted_track(Builtin::S05).unwrap();
        let s = run_splitting_sequence(&a.track, &a.chart(), &a.pants_measures[0], 10, Policy::LeastLarge).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.halt, Halt::VertexCycle);
    }

    #[test]
    fn zero_steps() {
        let a = adapted_track(Builtin::S05).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_carried_curve(&a.track, &mut rng, 3, 100).unwrap();
        let s = run_splitting_sequence(&a.track, &a.chart(), &g, 0, Policy::LeastLarge).unwrap();
        assert_eq!(s.tracks.len(), 1);
    }

    #[test]
    fn guided_sequence_is_carried_and_ends_in_guide() {
        let a = adapted_track(Builtin::S05).unwrap();
        let chart = a.chart();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let g = random_carried_curve(&a.track, &mut rng, 2, 100).unwrap();
            let s = run_splitting_sequence(&a.track, &chart, &g, 200, Policy::LeastLarge).unwrap();
            assert!(s.verify_carrying().unwrap());
            if s.halt == Halt::VertexCycle {
                let c = crate::traintrack::pushforward_curve(&a.track, &chart, &g).unwrap();
                let vc = crate::vertexcycles::vertex_cycles(s.last_track(), &chart).unwrap();
                assert!(vc.iter().any(|v| v.curve == c));
            }
        }
    }

    #[test]
    fn rounds_compose() {
        let a = adapted_track(Builtin::S12).unwrap();
        let chart = a.chart();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = random_carried_curve(&a.track, &mut rng, 4, 100).unwrap();
        let two = run_full_splitting_sequence(&a.track, &chart, &g, 2).unwrap();
        let one = run_full_splitting_sequence(&a.track, &chart, &g, 1).unwrap();
        if one.halt == Halt::Rounds {
            let again = run_full_splitting_sequence(one.last_track(), &chart, one.current(), 1).unwrap();
            assert_eq!(again.last_track(), two.last_track());
        }
    }

    #[test]
    fn rejects_non_measures() {
        let a = adapted_track(Builtin::S05).unwrap();
        let mut bad = vec![0i64; 12];
        bad[0] = 1;
        let err = run_splitting_sequence(&a.track, &a.chart(), &bad, 3, Policy::LeastLarge).unwrap_err();
        assert_eq!(err, SplittingError::NotCarried);
    }
}
