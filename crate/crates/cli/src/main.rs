use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use curvetrack::curvegraph::{scan_l, CurveGraphIndex};
use curvetrack::scalar::fmt_ratio;
use curvetrack::splitting::{
    convergence_diagnostic, lipschitz_check, phi_path, quasigeodesic_fit, run_full_splitting_sequence,
    run_splitting_sequence, write_convergence_csv, Policy, SplittingSequence,
};
use curvetrack::surface::{enumerate_curves, intersection_number, validate_coords, MultiCurve, NormalCurve, Triangulation};
use curvetrack::traintrack::{adapted_track, split, AdaptedTrack, Direction, SplitMove, TrackJson, TrainTrack};
use curvetrack::vertexcycles::vertex_cycles;
use curvetrack::Rational;
use curvetrack_cli::{emit_fixture, parse_surface, sample_sequence, verify_all, ExperimentConfig, Samples};
use serde_json::json;

#[derive(Parser)]
#[command(name = "curvetrack", version, about = "Train tracks and curve-graph experiments on S_{0,5} and S_{1,2}")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Built-in surface: s05 or s12.
    #[arg(long, global = true, default_value = "s05")]
    surface: String,
    /// Seed of every sampled object.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Coordinate bound of the curve universe.
    #[arg(long, global = true, default_value_t = 4)]
    bound: u32,
    /// Search radius for distances.
    #[arg(long, global = true, default_value_t = 10)]
    cap: u32,
    /// Maximum number of splits in a guided sequence.
    #[arg(long, global = true, default_value_t = 60)]
    steps: usize,
    /// Sets every sample count; the defaults meet the acceptance thresholds.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Surface data.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Curves in normal coordinates.
    Curves {
        #[command(subcommand)]
        cmd: CurvesCmd,
    },
    /// Curve-graph queries.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Train tracks.
    Track {
        #[command(subcommand)]
        cmd: TrackCmd,
    },
    /// Splitting sequences.
    Seq {
        #[command(subcommand)]
        cmd: SeqCmd,
    },
    /// The verification suite.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// JSON fixtures.
    Fixture {
        #[command(subcommand)]
        cmd: FixtureCmd,
    },
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Chart, signature and complete-track counts as JSON.
    Info,
}

#[derive(Subcommand)]
enum CurvesCmd {
    /// All curves with coordinates at most `--bound`.
    Enum,
    /// Intersection number of two curves given as comma-separated coordinates.
    I { a: String, b: String },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Distance with its lower bound.
    Dist { x: String, y: String },
    /// A path realizing the distance.
    Geodesic { x: String, y: String },
    /// Gromov product of `x` and `y` based at `p`.
    Gromov { x: String, y: String, p: String },
    /// Level sets `L_a(alpha, beta, r)` over a dyadic grid of `a`.
    #[command(name = "scanL")]
    ScanL {
        alpha: String,
        beta: String,
        #[arg(long, default_value = "2")]
        r: String,
        #[arg(long, default_value_t = -4)]
        lo: i32,
        #[arg(long, default_value_t = 4)]
        hi: i32,
    },
}

#[derive(Args)]
struct TrackArg {
    /// Track JSON; the adapted track when absent.
    #[arg(long)]
    track: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TrackCmd {
    /// The adapted track and its pants curves as JSON.
    Adapted,
    /// One split at a large branch.
    Split {
        #[command(flatten)]
        track: TrackArg,
        branch: usize,
        /// L, R or C.
        dir: String,
    },
    /// Vertex cycles with their curves.
    Vcycles {
        #[command(flatten)]
        track: TrackArg,
    },
    /// Splits a measure on the adapted track into connector multiples and a
    /// remainder.
    Decompose { mu: String },
}

#[derive(Args)]
struct GuideArg {
    /// Guide measure on the adapted track; sampled from `--seed` when absent.
    #[arg(long)]
    guide: Option<String>,
}

#[derive(Subcommand)]
enum SeqCmd {
    /// A guided sequence; prints the per-stage CSV.
    Run {
        #[command(flatten)]
        guide: GuideArg,
    },
    /// Full splitting rounds; prints the per-stage CSV.
    Full {
        #[command(flatten)]
        guide: GuideArg,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
    },
    /// Carrying, Lipschitz and fellow-travel checks on one sequence.
    Verify {
        #[command(flatten)]
        guide: GuideArg,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every check; CSV to `--out` or stdout, JSON summary to stderr.
    All,
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// A named fixture as JSON.
    Emit { name: String },
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().with_context(|| format!("bad integer '{t}'")))
        .collect()
}

fn parse_curve(chart: &Triangulation, s: &str) -> Result<NormalCurve> {
    Ok(validate_coords(chart, &parse_ints(s)?)?)
}

fn parse_ratio(s: &str) -> Result<Rational> {
    let r = match s.split_once('/') {
        Some((p, q)) => Rational::new(p.trim().parse()?, q.trim().parse()?),
        None => Rational::from(s.trim().parse::<i64>()?),
    };
    Ok(r)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn output(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn print_json(out: &Option<PathBuf>, v: &serde_json::Value) -> Result<()> {
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    Ok(())
}

fn load_track(at: &AdaptedTrack, path: Option<&Path>) -> Result<TrainTrack> {
    match path {
        None => Ok(at.track.clone()),
        Some(p) => {
            let j: TrackJson = serde_json::from_reader(File::open(p).with_context(|| format!("opening {}", p.display()))?)?;
            Ok(TrainTrack::from_json(&j)?)
        }
    }
}

impl Global {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::new(parse_surface(&self.surface)?, self.seed);
        cfg.bound = self.bound;
        cfg.cap = self.cap;
        cfg.steps = self.steps;
        cfg.samples = self.samples.map_or(Samples::DEFAULT, Samples::uniform);
        cfg.out = self.out.clone();
        cfg.workers = self.workers;
        cfg.validate()?;
        Ok(cfg)
    }

    fn index(&self, chart: &Triangulation) -> CurveGraphIndex {
        CurveGraphIndex::build(chart, self.bound, self.workers)
    }

    fn sequence(&self, cfg: &ExperimentConfig, at: &AdaptedTrack, guide: &GuideArg, rounds: Option<usize>) -> Result<SplittingSequence> {
        let chart = at.chart();
        let Some(g) = &guide.guide else {
            if rounds.is_some() {
                let s = sample_sequence(at, &chart, cfg, 0)?;
                return Ok(run_full_splitting_sequence(&at.track, &chart, &s.guide, rounds.unwrap_or(1))?);
            }
            return Ok(sample_sequence(at, &chart, cfg, 0)?);
        };
        let mu = parse_ints(g)?;
        Ok(match rounds {
            Some(n) => run_full_splitting_sequence(&at.track, &chart, &mu, n)?,
            None => run_splitting_sequence(&at.track, &chart, &mu, self.steps, Policy::LeastLarge)?,
        })
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let g = &cli.global;
    let cfg = g.config()?;
    let at = adapted_track(cfg.surface)?;
    let chart = at.chart();
    match &cli.cmd {
        Cmd::Surface { cmd: SurfaceCmd::Info } => {
            let sig = chart.sig();
            print_json(
                &g.out,
                &json!({
                    "surface": cfg.surface.id(),
                    "genus": sig.genus,
                    "punctures": sig.punctures,
                    "complexity": sig.complexity(),
                    "eulerCharacteristic": sig.euler_characteristic(),
                    "chart": chart.to_json(),
                    "completeBranches": sig.complete_branches(),
                    "completeSwitches": sig.complete_switches(),
                    "pants": at.pants.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
                }),
            )?;
        }
        Cmd::Curves { cmd } => match cmd {
            CurvesCmd::Enum => {
                let mut w = output(&g.out)?;
                for c in enumerate_curves(&chart, g.bound) {
                    writeln!(w, "{}", join(c.coords()))?;
                }
            }
            CurvesCmd::I { a, b } => {
                let (a, b) = (parse_curve(&chart, a)?, parse_curve(&chart, b)?);
                writeln!(output(&g.out)?, "{}", intersection_number(&chart, &a, &b)?)?;
            }
        },
        Cmd::Graph { cmd } => {
            let index = g.index(&chart);
            let mut w = output(&g.out)?;
            match cmd {
                GraphCmd::Dist { x, y } => {
                    let (cx, cy) = (parse_curve(&chart, x)?, parse_curve(&chart, y)?);
                    let d = index.distance_ext(&cx, &cy, g.cap)?;
                    writeln!(w, "x,y,d,lower")?;
                    writeln!(w, "{},{},{},{}", join(cx.coords()), join(cy.coords()), d.value, d.lower)?;
                }
                GraphCmd::Geodesic { x, y } => {
                    for c in index.geodesic_ext(&parse_curve(&chart, x)?, &parse_curve(&chart, y)?, g.cap)? {
                        writeln!(w, "{}", join(c.coords()))?;
                    }
                }
                GraphCmd::Gromov { x, y, p } => {
                    let (x, y, p) = (parse_curve(&chart, x)?, parse_curve(&chart, y)?, parse_curve(&chart, p)?);
                    writeln!(w, "{}", fmt_ratio(&index.gromov_product(&x, &y, &p, g.cap)?))?;
                }
                GraphCmd::ScanL { alpha, beta, r, lo, hi } => {
                    let alpha = MultiCurve::single(parse_curve(&chart, alpha)?);
                    let beta = MultiCurve::single(parse_curve(&chart, beta)?);
                    let grid = curvetrack::splitting::dyadic_grid(*lo, *hi);
                    let scan = scan_l(&index, &alpha, &beta, &parse_ratio(r)?, &grid, g.cap)?;
                    writeln!(w, "a,members,diameter,certified")?;
                    for e in &scan.entries {
                        let (d, ok) = e.diameter.map_or((String::new(), String::new()), |(d, ok)| (d.to_string(), ok.to_string()));
                        writeln!(w, "{},{},{d},{ok}", fmt_ratio(&e.a), e.members.len())?;
                    }
                }
            }
        }
        Cmd::Track { cmd } => match cmd {
            TrackCmd::Adapted => print_json(&g.out, &emit_fixture(&format!("{}-adapted", cfg.surface.id()))?)?,
            TrackCmd::Split { track, branch, dir } => {
                let t = load_track(&at, track.track.as_deref())?;
                let dir: Direction = dir.parse()?;
                let o = split(&t, SplitMove::new(*branch, dir), Some(&chart))?;
                print_json(
                    &g.out,
                    &json!({
                        "track": o.track.to_json(Some(&chart)),
                        "carrying": o.carrying.to_rows(),
                        "branchMap": o.branch_map,
                    }),
                )?;
            }
            TrackCmd::Vcycles { track } => {
                let t = load_track(&at, track.track.as_deref())?;
                print_json(&g.out, &serde_json::to_value(vertex_cycles(&t, &chart)?)?)?;
            }
            TrackCmd::Decompose { mu } => {
                print_json(&g.out, &serde_json::to_value(at.decompose(&parse_ints(mu)?)?)?)?;
            }
        },
        Cmd::Seq { cmd } => {
            let index = g.index(&chart);
            match cmd {
                SeqCmd::Run { guide } | SeqCmd::Full { guide, .. } => {
                    let rounds = match cmd {
                        SeqCmd::Full { rounds, .. } => Some(*rounds),
                        _ => None,
                    };
                    let s = g.sequence(&cfg, &at, guide, rounds)?;
                    let rows = convergence_diagnostic(&s, &index, g.cap)?;
                    write_convergence_csv(&rows, output(&g.out)?)?;
                    eprintln!("{} splits, halt {:?}", s.len(), s.halt);
                }
                SeqCmd::Verify { guide } => {
                    let s = g.sequence(&cfg, &at, guide, None)?;
                    let p = phi_path(&s, &chart)?;
                    let lip = lipschitz_check(&p, &index, g.cap)?;
                    let fit = quasigeodesic_fit(&p, &index, g.cap)?;
                    print_json(
                        &g.out,
                        &json!({
                            "splits": s.len(),
                            "halt": format!("{:?}", s.halt),
                            "carryingExact": s.verify_carrying()?,
                            "lipschitz": {"max": lip.max, "certified": lip.certified},
                            "fit": {"qFit": fmt_ratio(&fit.q_fit), "fellow": fit.fellow, "certified": fit.certified},
                        }),
                    )?;
                }
            }
        }
        Cmd::Verify { cmd: VerifyCmd::All } => {
            let report = verify_all(&cfg)?;
            report.write_csv(output(&g.out)?)?;
            for (c, (_, t)) in report.checks.iter().zip(&report.timing) {
                eprintln!("{:<26} {:<5} {:>8.2}s", c.id.name(), if c.passed { "pass" } else { "FAIL" }, t.as_secs_f64());
            }
            eprintln!("{}", serde_json::to_string_pretty(&report.constants)?);
            if !report.all_passed() {
                bail!("some checks failed");
            }
        }
        Cmd::Fixture { cmd: FixtureCmd::Emit { name } } => print_json(&g.out, &emit_fixture(name)?)?,
    }
    Ok(())
}
