//! The verification suite. Every check draws from RNG streams derived from
//! `(seed, task id)`, so results do not depend on the worker count.

use std::collections::HashSet;
use std::time::Instant;

use curvetrack::curvegraph::{ConstantsReport, CurveGraphIndex, GraphError, Measured};
use curvetrack::splitting::{
    dyadic_grid, lemma25_verify, lipschitz_check, phi_path, quasigeodesic_fit, random_carried_curve,
    run_splitting_sequence, Policy, SplittingError, SplittingSequence,
};
use curvetrack::surface::{
    enumerate_curves, intersection_number, intersection_number_multi, overlay, surgery_neighbours,
    MultiCurve, NormalCurve, Triangulation,
};
use curvetrack::traintrack::{canonical_code, total_mass, AdaptedTrack, Builtin, TrainTrack};
use curvetrack::vertexcycles::{intersection_bound_against, cross_check, extreme_rays, vertex_cycles, VertexCycle};
use curvetrack::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::report::{CheckId, CheckResult, RunReport};
use crate::HarnessError;

/// Largest coefficient of a vertex cycle in a random guide.
pub const GUIDE_COEFF: i64 = 200;
const GUIDE_TRIES: usize = 500;
/// Coefficient range of the measures in the intersection-bound sweep.
const MEASURE_COEFF: i64 = 3;
/// Extra sequences drawn, as a multiple of the target, to reach the
/// number passing the distance-3 filter.
const STAGE_ATTEMPTS: usize = 10;
/// Exponents of the dyadic grid for the kappa scan.
const KAPPA_GRID: (i32, i32) = (-20, 20);
/// Exponents of the grid of `a` values in the level-set scans, and `r`.
const SCAN_GRID: (i32, i32) = (-4, 4);
const SCAN_R: i64 = 2;
/// Coordinate bound of the curves paired in the oracle checks.
const ORACLE_BOUND: u32 = 6;
/// Largest vertex-cycle count of a track, measured over the default sweep.
/// A larger count is reported as drift.
pub fn vertex_cycle_count_bound(surface: Builtin) -> usize {
    match surface {
        Builtin::S05 | Builtin::S12 => 7,
    }
}

/// Task streams: stream ids are spaced so checks never share one.
#[derive(Clone, Copy)]
enum Stream {
    Sequence = 0,
    Measure = 1,
    Oracle = 2,
    Triangle = 3,
    Scan = 4,
}

fn task_rng(seed: u64, stream: Stream, task: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 48) | task);
    rng
}

/// A guided sequence from the adapted track, with a random carried guide.
pub fn sample_sequence(at: &AdaptedTrack, chart: &Triangulation, cfg: &ExperimentConfig, task: u64) -> Result<SplittingSequence, HarnessError> {
    let mut rng = task_rng(cfg.seed, Stream::Sequence, task);
    let guide = random_carried_curve(&at.track, &mut rng, GUIDE_COEFF, GUIDE_TRIES).ok_or(HarnessError::NoGuide(task))?;
    Ok(run_splitting_sequence(&at.track, chart, &guide, cfg.steps, Policy::LeastLarge)?)
}

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    at: AdaptedTrack,
    chart: Triangulation,
    index: CurveGraphIndex,
    pool: rayon::ThreadPool,
}

impl Ctx<'_> {
    fn par_map<T: Sync, U: Send>(&self, xs: &[T], f: impl Fn(usize, &T) -> U + Sync + Send) -> Vec<U> {
        self.pool
            .install(|| xs.par_iter().enumerate().map(|(i, x)| f(i, x)).collect())
    }

    fn measured(&self, value: Rational, samples: usize, certified: bool) -> Measured {
        Measured::new(value, self.cfg.seed, samples, self.cfg.surface.id(), certified)
    }
}

fn is_truncation(e: &SplittingError) -> bool {
    matches!(e, SplittingError::Graph(GraphError::Unreachable(_) | GraphError::NoWitness(_)))
}

/// Runs every check in order and collects the measured constants.
pub fn verify_all(cfg: &ExperimentConfig) -> Result<RunReport, HarnessError> {
    cfg.validate()?;
    let at = curvetrack::traintrack::adapted_track(cfg.surface)?;
    let chart = at.chart();
    let index = CurveGraphIndex::build(&chart, cfg.bound, cfg.workers);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| HarnessError::ConfigInvalid(e.to_string()))?;
    let ctx = Ctx {
        cfg,
        at,
        chart,
        index,
        pool,
    };
    let mut report = RunReport {
        config: cfg.clone(),
        checks: Vec::new(),
        constants: ConstantsReport::default(),
        timing: Vec::new(),
    };

    let tasks: Vec<u64> = (0..cfg.samples.sequences as u64).collect();
    let mut seqs = ctx
        .par_map(&tasks, |_, &t| sample_sequence(&ctx.at, &ctx.chart, cfg, t))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let timed = |report: &mut RunReport, id: CheckId, f: &mut dyn FnMut(&mut ConstantsReport) -> Result<CheckResult, HarnessError>| {
        let t = Instant::now();
        let c = f(&mut report.constants)?;
        report.timing.push((id, t.elapsed()));
        report.checks.push(c);
        Ok::<(), HarnessError>(())
    };

    let tracks = distinct_tracks(&seqs, cfg.samples.tracks);
    timed(&mut report, CheckId::VertexCycleCrossCheck, &mut |_| Ok(check_cross(&ctx, &tracks)))?;
    timed(&mut report, CheckId::IntersectionBound, &mut |_| check_intersection_bound(&ctx, &tracks))?;
    timed(&mut report, CheckId::DistanceBound, &mut |_| check_distance_bound(&ctx))?;
    // the two path checks settle their maxima only on wider samples
    let shared = seqs.len();
    let (n_lip, n_fel) = (cfg.samples.lipschitz.max(shared), cfg.samples.fellow.max(shared));
    let extra: Vec<u64> = (shared as u64..n_lip.max(n_fel) as u64).collect();
    for s in ctx.par_map(&extra, |_, &t| sample_sequence(&ctx.at, &ctx.chart, cfg, t)) {
        seqs.push(s?);
    }
    timed(&mut report, CheckId::Lipschitz, &mut |k| check_lipschitz(&ctx, &seqs[..n_lip], k))?;
    timed(&mut report, CheckId::FellowTravel, &mut |k| check_fellow(&ctx, &seqs[..n_fel], k))?;
    timed(&mut report, CheckId::StageBounds, &mut |k| check_stages(&ctx, &mut seqs, shared, k))?;
    timed(&mut report, CheckId::LevelSetScan, &mut |k| check_scans(&ctx, &seqs, k))?;
    timed(&mut report, CheckId::Carrying, &mut |_| check_carrying(&ctx, &seqs))?;
    timed(&mut report, CheckId::IntersectionOracle, &mut |_| check_oracle(&ctx))?;
    timed(&mut report, CheckId::StructuralCounts, &mut |k| check_counts(&ctx, &seqs, k))?;
    Ok(report)
}

/// Up to `limit` pairwise non-isomorphic tracks, in order of appearance.
fn distinct_tracks(seqs: &[SplittingSequence], limit: usize) -> Vec<TrainTrack> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in seqs.iter().flat_map(|s| &s.tracks) {
        if out.len() == limit {
            break;
        }
        if seen.insert(canonical_code(t)) {
            out.push(t.clone());
        }
    }
    out
}

fn check_cross(ctx: &Ctx, tracks: &[TrainTrack]) -> CheckResult {
    let results = ctx.par_map(tracks, |_, t| {
        let cc = cross_check(t);
        let missing = cc.rays.iter().filter(|r| !cc.trainpaths.contains(r)).count();
        let extra = cc.trainpaths.iter().filter(|m| !cc.rays.contains(m)).count();
        (missing, extra)
    });
    let mut c = CheckResult::new(CheckId::VertexCycleCrossCheck);
    c.samples = tracks.len();
    let missing: usize = results.iter().map(|r| r.0).sum();
    let extra: usize = results.iter().map(|r| r.1).sum();
    c.violations = results.iter().filter(|r| r.0 + r.1 > 0).count();
    c.passed = c.violations == 0;
    c.set("raysFailingTrainpathRule", missing);
    c.set("trainpathCyclesNotExtreme", extra);
    c
}

fn check_intersection_bound(ctx: &Ctx, tracks: &[TrainTrack]) -> Result<CheckResult, HarnessError> {
    let mut c = CheckResult::new(CheckId::IntersectionBound);
    if tracks.is_empty() {
        return Ok(c);
    }
    let n = ctx.cfg.samples.measures;
    let per: Vec<usize> = (0..tracks.len()).map(|i| n / tracks.len() + usize::from(i < n % tracks.len())).collect();
    let results = ctx.par_map(tracks, |i, t| -> Result<(usize, usize, Rational), HarnessError> {
        let mut rng = task_rng(ctx.cfg.seed, Stream::Measure, i as u64);
        let cycles = vertex_cycles(t, &ctx.chart)?;
        let rays = extreme_rays(t);
        let (mut done, mut bad, mut worst) = (0, 0, Rational::from(0));
        while done < per[i] {
            let mut mu = vec![0i64; t.n_branches()];
            for r in &rays {
                let k = rng.gen_range(0..=MEASURE_COEFF);
                mu.iter_mut().zip(r).for_each(|(x, y)| *x += k * y);
            }
            if mu.iter().all(|&x| x == 0) {
                continue;
            }
            let curve = curvetrack::traintrack::pushforward(t, &ctx.chart, &mu)?;
            let out = intersection_bound_against(&cycles, &ctx.chart, &mu, &curve)?;
            done += 1;
            bad += usize::from(!out.holds);
            worst = worst.max(Rational::new(out.max_intersection as i64, out.bound));
        }
        Ok((done, bad, worst))
    });
    let mut worst = Rational::from(0);
    for r in results {
        let (done, bad, w) = r?;
        c.samples += done;
        c.violations += bad;
        worst = worst.max(w);
    }
    c.passed = c.violations == 0;
    c.set("maxIntersectionOverMass", worst);
    Ok(c)
}

fn check_distance_bound(ctx: &Ctx) -> Result<CheckResult, HarnessError> {
    let u = ctx.index.universe();
    let rows: Vec<usize> = (0..u.len()).collect();
    let results = ctx.par_map(&rows, |_, &x| -> Result<(usize, usize, usize, u32), GraphError> {
        let (mut ok, mut bad, mut open, mut dmax) = (0, 0, 0, 0);
        for y in x + 1..u.len() {
            match ctx.index.distance(&u[x], &u[y], ctx.cfg.cap) {
                Ok(d) if d.certified() => {
                    let i = ctx.index.intersection(x, y);
                    ok += 1;
                    bad += usize::from(u64::from(d.value) > 2 * i + 1);
                    dmax = dmax.max(d.value);
                }
                Ok(_) | Err(GraphError::Unreachable(_)) => open += 1,
                Err(e) => return Err(e),
            }
        }
        Ok((ok, bad, open, dmax))
    });
    let mut c = CheckResult::new(CheckId::DistanceBound);
    let mut dmax = 0;
    for r in results {
        let (ok, bad, open, d) = r?;
        c.samples += ok;
        c.violations += bad;
        c.truncated += open;
        dmax = dmax.max(d);
    }
    c.passed = c.violations == 0;
    c.set("universe", u.len());
    c.set("maxCertifiedDistance", dmax);
    Ok(c)
}

fn check_lipschitz(ctx: &Ctx, seqs: &[SplittingSequence], k: &mut ConstantsReport) -> Result<CheckResult, HarnessError> {
    let results = ctx.par_map(seqs, |_, s| {
        let p = phi_path(s, &ctx.chart)?;
        lipschitz_check(&p, &ctx.index, ctx.cfg.cap)
    });
    let mut c = CheckResult::new(CheckId::Lipschitz);
    let (mut max, mut certified) = (0, true);
    for r in results {
        match r {
            Ok(l) => {
                c.samples += l.steps;
                max = max.max(l.max);
                certified &= l.certified;
            }
            Err(e) if is_truncation(&e) => c.truncated += 1,
            Err(e) => return Err(e.into()),
        }
    }
    c.passed = c.truncated == 0 && certified;
    c.set("cStar", max);
    c.set("certified", certified);
    c.set("sequences", seqs.len());
    k.C_lipschitz.push(ctx.measured(Rational::from(i64::from(max)), c.samples, certified));
    Ok(c)
}

fn check_fellow(ctx: &Ctx, seqs: &[SplittingSequence], k: &mut ConstantsReport) -> Result<CheckResult, HarnessError> {
    let results = ctx.par_map(seqs, |_, s| {
        let p = phi_path(s, &ctx.chart)?;
        quasigeodesic_fit(&p, &ctx.index, ctx.cfg.cap)
    });
    let mut c = CheckResult::new(CheckId::FellowTravel);
    let (mut d_star, mut q_star, mut certified, mut longest) = (0, Rational::from(1), 0, 0);
    for r in results {
        match r {
            Ok(f) => {
                c.samples += 1;
                d_star = d_star.max(f.fellow);
                q_star = q_star.max(f.q_fit);
                certified += usize::from(f.certified);
                longest = longest.max(f.points);
            }
            Err(e) if is_truncation(&e) => c.truncated += 1,
            Err(e) => return Err(e.into()),
        }
    }
    c.passed = c.truncated == 0;
    c.set("dStar", d_star);
    c.set("qFit", q_star);
    c.set("certifiedFits", certified);
    c.set("longestPath", longest);
    let all = certified == c.samples;
    k.D_fellow_travel.push(ctx.measured(Rational::from(i64::from(d_star)), c.samples, all));
    k.Q_fit.push(ctx.measured(q_star, c.samples, all));
    Ok(c)
}

/// Runs over the first `start` sequences, then over the rest of the pool
/// and fresh draws until enough pass the stage filter. Sequence `i` of the
/// pool is always task `i`.
fn check_stages(ctx: &Ctx, seqs: &mut Vec<SplittingSequence>, start: usize, k: &mut ConstantsReport) -> Result<CheckResult, HarnessError> {
    let target = ctx.cfg.samples.stages;
    let grid = dyadic_grid(KAPPA_GRID.0, KAPPA_GRID.1);
    let mut c = CheckResult::new(CheckId::StageBounds);
    let (mut kmax, mut k0, mut q) = (Rational::from(0), Rational::from(0), Rational::from(0));
    let (mut filtered, mut mismatches, mut start_fail, mut end_fail, mut monotone) = (0usize, 0usize, 0usize, 0usize, 0usize);
    let run = |s: &SplittingSequence| lemma25_verify(&ctx.at, s, &[], &grid);
    let mut outcomes = ctx.par_map(&seqs[..start], |_, s| run(s));
    let limit = (STAGE_ATTEMPTS * target).max(start);
    let mut i = 0;
    while c.samples < target {
        if i == outcomes.len() {
            if i >= limit {
                break;
            }
            if i == seqs.len() {
                let s = sample_sequence(&ctx.at, &ctx.chart, ctx.cfg, i as u64)?;
                seqs.push(s);
            }
            outcomes.push(run(&seqs[i]));
        }
        match &outcomes[i] {
            Ok(o) => {
                c.samples += 1;
                kmax = kmax.max(o.k);
                k0 = k0.max(o.k0);
                q = q.max(o.q);
                c.violations += o.inequality_violations;
                mismatches += o.large_weight_mismatches;
                start_fail += usize::from(!o.kappa_start);
                end_fail += usize::from(!o.kappa_end);
                monotone += usize::from(o.kappa_monotone);
            }
            Err(SplittingError::NoAdmissibleStage) => filtered += 1,
            Err(e) if is_truncation(e) => c.truncated += 1,
            Err(e) => return Err(e.clone().into()),
        }
        i += 1;
    }
    c.passed = c.violations == 0 && mismatches == 0 && start_fail == 0 && end_fail == 0 && c.truncated == 0;
    c.set("k", kmax);
    c.set("k0", k0);
    c.set("q", q);
    c.set("filteredOut", filtered);
    c.set("largeWeightMismatches", mismatches);
    c.set("kappaStartFailures", start_fail);
    c.set("kappaEndFailures", end_fail);
    c.set("kappaMonotone", monotone);
    k.k_lemma25.push(ctx.measured(kmax, c.samples, true));
    k.k0_pants.push(ctx.measured(k0, c.samples, true));
    k.q_vcycle_decomp.push(ctx.measured(q, c.samples, true));
    Ok(c)
}

/// Level sets of the pants multicurve against sampled universe curves, and
/// the thin-triangle estimate.
fn check_scans(ctx: &Ctx, seqs: &[SplittingSequence], k: &mut ConstantsReport) -> Result<CheckResult, HarnessError> {
    let mut c = CheckResult::new(CheckId::LevelSetScan);
    let mut pants = MultiCurve::new();
    for p in &ctx.at.pants {
        pants.add(p.clone(), 1);
    }
    let meeting: Vec<&NormalCurve> = ctx
        .index
        .universe()
        .iter()
        .filter(|g| intersection_number_multi(&ctx.chart, &pants, &MultiCurve::single((*g).clone())).is_ok_and(|i| i > 0))
        .collect();
    let grid = dyadic_grid(SCAN_GRID.0, SCAN_GRID.1);
    let r = Rational::from(SCAN_R);
    let mut rng = task_rng(ctx.cfg.seed, Stream::Scan, 0);
    let picks: Vec<&NormalCurve> = meeting
        .choose_multiple(&mut rng, ctx.cfg.samples.scans.min(meeting.len()))
        .copied()
        .collect();
    let (mut empty, mut diam, mut certified) = (0, 0, true);
    for beta in picks {
        let scan = curvetrack::curvegraph::scan_l(&ctx.index, &pants, &MultiCurve::single(beta.clone()), &r, &grid, ctx.cfg.cap)?;
        c.samples += scan.entries.len();
        empty += scan.entries.iter().filter(|e| e.members.is_empty()).count();
        for e in &scan.entries {
            if let Some((d, ok)) = e.diameter {
                diam = diam.max(d);
                certified &= ok;
            }
        }
    }
    c.set("emptyLevelSets", empty);
    c.set("maxDiameter", diam);
    c.set("diametersCertified", certified);

    let mut trng = task_rng(ctx.cfg.seed, Stream::Triangle, 0);
    let (delta, used) = ctx.index.delta_estimate(ctx.cfg.samples.triangles, ctx.cfg.cap, &mut trng)?;
    c.set("delta", delta);
    c.set("triangles", used);
    k.delta_estimate.push(ctx.measured(Rational::from(i64::from(delta)), used, true));

    // diameter of the vertex-cycle set of every final track
    let diams = ctx.par_map(seqs, |_, s| -> Result<Option<(u32, bool)>, HarnessError> {
        let cycles: Vec<NormalCurve> = vertex_cycles(s.last_track(), &ctx.chart)?.into_iter().map(|v| v.curve).collect();
        let m = ctx.index.distance_matrix(&cycles, ctx.cfg.cap)?;
        let mut out: Option<(u32, bool)> = Some((0, true));
        for row in &m {
            for d in row {
                out = match (out, d) {
                    (Some((v, ok)), Some(d)) => Some((v.max(d.value), ok && d.certified())),
                    _ => None,
                };
            }
        }
        Ok(out)
    });
    let (mut dv, mut dv_ok, mut open) = (0, true, 0);
    for d in diams {
        match d? {
            Some((v, ok)) => {
                dv = dv.max(v);
                dv_ok &= ok;
            }
            None => open += 1,
        }
    }
    c.truncated = open;
    c.set("vertexCycleDiameter", dv);
    k.D_vcycle_diam.push(ctx.measured(Rational::from(i64::from(dv)), seqs.len() - open, dv_ok));
    Ok(c)
}

fn check_carrying(ctx: &Ctx, seqs: &[SplittingSequence]) -> Result<CheckResult, HarnessError> {
    let results = ctx.par_map(seqs, |_, s| -> Result<(bool, usize), HarnessError> {
        let exact = s.verify_carrying()?;
        let invalid = s.tracks.iter().filter(|t| vertex_cycles(t, &ctx.chart).is_err()).count();
        Ok((exact, invalid))
    });
    let mut c = CheckResult::new(CheckId::Carrying);
    let mut invalid = 0;
    for r in results {
        let (exact, bad) = r?;
        c.samples += 1;
        c.violations += usize::from(!exact || bad > 0);
        invalid += bad;
    }
    c.passed = c.violations == 0;
    c.set("invalidPushforwards", invalid);
    Ok(c)
}

fn check_oracle(ctx: &Ctx) -> Result<CheckResult, HarnessError> {
    let chart = &ctx.chart;
    let mut c = CheckResult::new(CheckId::IntersectionOracle);
    let pool = enumerate_curves(chart, ORACLE_BOUND);
    let pairs: Vec<u64> = (0..ctx.cfg.samples.oracle_pairs as u64).collect();
    let results = ctx.par_map(&pairs, |_, &t| -> Result<Option<(bool, bool)>, HarnessError> {
        let mut rng = task_rng(ctx.cfg.seed, Stream::Oracle, t);
        let (Some(a), Some(b)) = (pool.choose(&mut rng).cloned(), pool.choose(&mut rng).cloned()) else {
            return Ok(None);
        };
        let ab = intersection_number(chart, &a, &b)?;
        let symmetric = ab == intersection_number(chart, &b, &a)?;
        // additivity over a multicurve rebuilt from summed coordinates
        let ma = MultiCurve::single(a.clone());
        let k = rng.gen_range(2..=4u32);
        let scaled: Vec<u32> = b.coords().iter().map(|x| k * x).collect();
        let mut linear = intersection_number_multi(chart, &ma, &MultiCurve::from_coords(chart, &scaled)?)? == u64::from(k) * ab;
        if let Some(z) = surgery_neighbours(chart, &b).first() {
            let sum: Vec<u32> = b.coords().iter().zip(z.coords()).map(|(x, y)| x + y).collect();
            let az = intersection_number(chart, &a, z)?;
            linear &= intersection_number_multi(chart, &ma, &MultiCurve::from_coords(chart, &sum)?)? == ab + az;
        }
        Ok(Some((symmetric, linear)))
    });
    let (mut asym, mut nonlinear) = (0, 0);
    for r in results {
        if let Some((s, l)) = r? {
            c.samples += 1;
            asym += usize::from(!s);
            nonlinear += usize::from(!l);
        }
    }
    let small = enumerate_curves(chart, 4);
    let mut rng = task_rng(ctx.cfg.seed, Stream::Oracle, u64::MAX >> 16);
    let cross: Vec<(NormalCurve, NormalCurve)> = (0..ctx.cfg.samples.oracle_cross)
        .filter_map(|_| Some((small.choose(&mut rng)?.clone(), small.choose(&mut rng)?.clone())))
        .collect();
    let agree = ctx.par_map(&cross, |_, (a, b)| -> Result<bool, HarnessError> {
        Ok(intersection_number(chart, a, b)? == overlay::minimal_overlay(chart, a, b)?.crossings)
    });
    let mut disagree = 0;
    for a in agree {
        disagree += usize::from(!a?);
    }
    c.violations = asym + nonlinear + disagree;
    c.passed = c.violations == 0;
    c.set("asymmetric", asym);
    c.set("nonlinear", nonlinear);
    c.set("oraclePairs", cross.len());
    c.set("oracleDisagreements", disagree);
    Ok(c)
}

fn check_counts(ctx: &Ctx, seqs: &[SplittingSequence], _: &mut ConstantsReport) -> Result<CheckResult, HarnessError> {
    let sig = ctx.chart.sig();
    let bound = vertex_cycle_count_bound(ctx.cfg.surface);
    let tracks = distinct_tracks(seqs, usize::MAX);
    let results = ctx.par_map(&tracks, |_, t| -> Result<(bool, usize, i64), HarnessError> {
        let shape = t.n_branches() == sig.complete_branches() && t.n_switches() == sig.complete_switches();
        let cycles: Vec<VertexCycle> = vertex_cycles(t, &ctx.chart)?;
        let mass = cycles.iter().map(|v| total_mass(&v.measure)).max().unwrap_or(0);
        Ok((shape, cycles.len(), mass))
    });
    let mut c = CheckResult::new(CheckId::StructuralCounts);
    let (mut shape_bad, mut count_max, mut mass_max, mut drift, mut heavy) = (0, 0, 0, 0, 0);
    for r in results {
        let (shape, count, mass) = r?;
        c.samples += 1;
        shape_bad += usize::from(!shape);
        count_max = count_max.max(count);
        mass_max = mass_max.max(mass);
        drift += usize::from(count > bound);
        heavy += usize::from(mass > 2 * sig.complete_branches() as i64);
    }
    c.violations = shape_bad + drift + heavy;
    c.passed = c.violations == 0;
    c.set("branches", sig.complete_branches());
    c.set("switches", sig.complete_switches());
    c.set("shapeViolations", shape_bad);
    c.set("maxVertexCycles", count_max);
    c.set("vertexCycleBound", bound);
    c.set("maxVertexCycleMass", mass_max);
    Ok(c)
}
