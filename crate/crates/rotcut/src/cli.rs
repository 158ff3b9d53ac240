//! Command-line surface: instance generation, solving (fast or brute
//! force), verification, trace inspection, event export, and SVG rendering.
//! Exit codes: 0 success or verified, 1 verification failure, 2 invalid
//! input or usage, 3 internal inconsistency.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bruteforce::{brute_solve, events_to_json, verify_solution, Provenance};
use crate::error::{Error, Result};
use crate::exact::{rat_from_str, ExtReal};
use crate::geometry::{cross_section, generate_scene, validate_and_normalize, Scene};
use crate::oracle::{extract_crossings, CrossingOutcome};
use crate::render::{render_svg, RenderSpec};
use crate::solver::{assemble_solution, side_counts, solve_seeded, Solution, SolutionKind};

#[derive(Parser)]
#[command(
    name = "rotcut",
    about = "Find a plane through the z-axis whose cross-section of a 3-colored \
             line arrangement admits a line bisecting all three color classes",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random valid scene.
    Gen(GenArgs),
    /// Solve a scene: find and verify a bisecting cross-section.
    Solve(SolveArgs),
    /// Re-verify a solution against a scene.
    Verify(VerifyArgs),
    /// Print the crossing sign sequence and trace at a slope.
    Trace(TraceArgs),
    /// Render a cross-section (or its dual median levels) as SVG.
    Render(RenderArgs),
    /// Export all brute-force events as JSON.
    Events(EventsArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    reds: usize,
    #[arg(long)]
    greens: usize,
    #[arg(long)]
    blues: usize,
    /// Coordinates are integers in [-bound, bound].
    #[arg(long, default_value_t = 50)]
    bound: i64,
    #[arg(long, env = "ROTCUT_SEED", default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fast,
    Brute,
}

#[derive(Args)]
struct SolveArgs {
    scene: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Fast)]
    method: Method,
    #[arg(long, env = "ROTCUT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    scene: PathBuf,
    solution: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Before,
    After,
}

#[derive(Args)]
struct TraceArgs {
    scene: PathBuf,
    /// Slope as an exact rational "p/q".
    #[arg(long)]
    slope: String,
    /// Query just before or just after the slope instead of exactly at it.
    #[arg(long, value_enum)]
    side: Option<Side>,
}

#[derive(Args)]
struct RenderArgs {
    scene: PathBuf,
    /// Slope as an exact rational "p/q"; defaults to the solution slope
    /// when --solution is given.
    #[arg(long)]
    slope: Option<String>,
    /// Draw the dual arrangement and median levels.
    #[arg(long)]
    dual: bool,
    /// Solution file whose bisector should be drawn.
    #[arg(long)]
    solution: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 600)]
    height: u32,
    #[arg(long, default_value_t = 9)]
    precision: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EventsArgs {
    scene: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn read_scene(path: &PathBuf) -> Result<Scene> {
    Scene::from_json(&std::fs::read_to_string(path)?)
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn brute_solution(scene: &Scene) -> Result<Solution> {
    let records = brute_solve(scene)?;
    let hit = records.iter().find(|r| r.is_solution).ok_or_else(|| {
        Error::InternalInconsistency("brute force found no solution; one must exist".into())
    })?;
    let (a, b) = hit.witness.expect("solution events carry a witness");
    let slope = ExtReal::Finite(hit.slope.clone());
    let cs = cross_section(scene, &slope);
    let counts = side_counts(&cs, a, b);
    let (kind, witness) = match hit.provenance {
        Provenance::Triple(i, j, k) => (SolutionKind::CollinearTriple, [i, j, k]),
        Provenance::Parallel(l) => (SolutionKind::ParallelDegenerate, [a, b, l]),
    };
    Ok(Solution {
        slope,
        kind,
        witness,
        bisector: (a, b),
        counts,
        rotation: None,
    })
}

fn run_command(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(args) => {
            let scene = generate_scene(args.reds, args.greens, args.blues, args.bound, args.seed)?;
            emit(&args.output, &scene.to_json()?)
        }
        Command::Solve(args) => {
            let scene = read_scene(&args.scene)?;
            let sol = match args.method {
                Method::Fast => solve_seeded(&scene, args.seed)?,
                Method::Brute => {
                    let (normalized, rotation) = validate_and_normalize(&scene, args.seed)?;
                    let mut sol = brute_solution(&normalized)?;
                    if !rotation.is_identity() {
                        sol.rotation = Some(rotation);
                    }
                    verify_solution(&scene, &sol)?;
                    sol
                }
            };
            emit(&args.output, &sol.to_json()?)
        }
        Command::Verify(args) => {
            let scene = read_scene(&args.scene)?;
            let sol = Solution::from_json(&std::fs::read_to_string(&args.solution)?)?;
            verify_solution(&scene, &sol)?;
            println!(
                "verified: bisector through lines {} and {}",
                sol.bisector.0, sol.bisector.1
            );
            Ok(())
        }
        Command::Trace(args) => {
            let scene = read_scene(&args.scene)?;
            let (scene, rotation) = validate_and_normalize(&scene, 0)?;
            if !rotation.is_identity() {
                eprintln!("note: scene was rotated to move every line off the chart boundary");
            }
            let base = rat_from_str(&args.slope)?;
            let slope = match args.side {
                None => ExtReal::rational(base),
                Some(Side::Before) => ExtReal::just_below(base),
                Some(Side::After) => ExtReal::just_above(base),
            };
            match extract_crossings(&scene, &slope)? {
                CrossingOutcome::Coincidence(c) => {
                    let w = crate::oracle::CoincidenceWitness {
                        slope: slope.clone(),
                        dual_x: c.x,
                        dual_y: c.y,
                        green_id: c.green_id,
                        red_id: c.red_id,
                        blue_id: c.blue_id,
                    };
                    let sol = assemble_solution(&scene, &w)?;
                    println!("solution at this slope:");
                    print!("{}", sol.to_json()?);
                }
                CrossingOutcome::Sequence(crossings) => {
                    let seq = crate::levels::sign_seq_of(&crossings);
                    seq.validate().map_err(|e| {
                        Error::InternalInconsistency(format!(
                            "crossing sequence violates invariants: {e}"
                        ))
                    })?;
                    println!("sequence: {}", seq.encode());
                    println!("trace: {}", seq.trace());
                }
            }
            Ok(())
        }
        Command::Render(args) => {
            let scene = read_scene(&args.scene)?;
            let solution = match &args.solution {
                Some(path) => Some(Solution::from_json(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            let slope = match (&args.slope, &solution) {
                (Some(s), _) => ExtReal::rational(rat_from_str(s)?),
                (None, Some(sol)) => sol.slope.clone(),
                (None, None) => {
                    return Err(Error::Usage("render needs --slope or --solution".into()))
                }
            };
            let scene = match solution.as_ref().and_then(|s| s.rotation.clone()) {
                Some(rot) => rot.apply_scene(&scene),
                None => scene,
            };
            let spec = RenderSpec {
                width: args.width,
                height: args.height,
                precision: args.precision,
                dual: args.dual,
            };
            let svg = render_svg(&scene, &slope, &spec, solution.as_ref())?;
            emit(&args.output, &svg)
        }
        Command::Events(args) => {
            let scene = read_scene(&args.scene)?;
            let (scene, rotation) = validate_and_normalize(&scene, 0)?;
            if !rotation.is_identity() {
                eprintln!("note: scene was rotated to move every line off the chart boundary");
            }
            let records = brute_solve(&scene)?;
            emit(&args.output, &events_to_json(&records)?)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::VerificationFailed { .. } => 1,
        Error::Usage(_)
        | Error::DegenerateInput(_)
        | Error::DegenerateArrangement(_)
        | Error::InvalidEdit(_)
        | Error::Io(_)
        | Error::Json(_) => 2,
        Error::InternalInconsistency(_) => 3,
    }
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/usage text.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
