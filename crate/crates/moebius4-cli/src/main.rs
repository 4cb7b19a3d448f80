//! Command-line front end: complex input → configuration → audit → group
//! computations → machine-readable reports.
//!
//! Exit status: 0 when every requested check passed, 2 when checks ran but
//! found violations, counterexamples, or exceeded caps, 1 on input errors.

mod input;

use anyhow::Context;
use clap::{Parser, Subcommand};
use moebius4::construction::{
    audit, coverage_check, generate_configuration, nerve, pair_audit, BallConfiguration,
};
use moebius4::coxeter::{
    abstract_growth, congruence_quotient, enumerate_growth, orbit_tiling, torsion_survival_check,
    GroupPresentation, PresentationError,
};
use moebius4::cubical::{CellJson, CubicalComplex2};
use moebius4::inversive::{PointOrInfinity, Sphere};
use moebius4::plinv::{involution_check, CubeInversion};
use moebius4::rat::{format_rat, format_vec4, parse_rat, rat, vec4_to_f64};
use moebius4::report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "moebius4",
    about = "Exact ball configurations over cubical 2-complexes in R^4 and their reflection groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this path instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for the randomized cross-check oracles
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores); reports are byte-identical for
    /// any value
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the ball configuration over a cubical complex
    Generate { input: PathBuf },
    /// Classify all sphere pairs, audit documented angles, check relations,
    /// the canonical nerve map, and grid coverage
    Audit {
        input: PathBuf,
        /// Grid step for the coverage sampling (complex inputs)
        #[arg(long, default_value = "1/16")]
        grid_step: String,
    },
    /// Nerve of the configuration and the canonical-map certificate
    Nerve {
        input: PathBuf,
        /// Largest simplex dimension tested
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// Enumerate the reflection group: matrix growth vs the abstract oracle
    Enumerate {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        #[arg(long, default_value_t = 1_000_000)]
        element_cap: usize,
    },
    /// Orbit of a probe point under all elements up to a length
    Tile {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        #[arg(long, default_value_t = 1_000_000)]
        element_cap: usize,
        /// Probe point: "inf" or four comma-separated rationals
        #[arg(long, default_value = "5,5,5,5")]
        probe: String,
    },
    /// Congruence quotient mod p with torsion-survival verification
    Quotient {
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        prime: u64,
        #[arg(long, default_value_t = 4)]
        max_length: usize,
        #[arg(long, default_value_t = 1_000_000)]
        element_cap: usize,
        /// Cap for the mod-p group order exploration
        #[arg(long, default_value_t = 50_000)]
        order_cap: usize,
        /// Power bound for finite-order detection
        #[arg(long, default_value_t = 60)]
        order_bound: u32,
    },
    /// Piecewise inversion in a cube boundary: involution and side-swap checks
    Plinv {
        input: PathBuf,
        /// Number of random rational sample points
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.threads {
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool,
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return ExitCode::from(1);
                }
            };
            pool.install(|| dispatch(&cli))
        }
        None => dispatch(&cli),
    };
    match outcome {
        Ok((value, pass)) => {
            let mut text =
                serde_json::to_string_pretty(&value).expect("reports always serialize");
            text.push('\n');
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "findings"
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<(Value, bool)> {
    match &cli.command {
        Command::Generate { input } => run_generate(input, cli.seed),
        Command::Audit { input, grid_step } => run_audit(input, grid_step, cli.seed),
        Command::Nerve { input, max_dim } => run_nerve(input, *max_dim, cli.seed),
        Command::Enumerate {
            input,
            max_length,
            element_cap,
        } => run_enumerate(input, *max_length, *element_cap, cli.seed, cli.output.as_ref()),
        Command::Tile {
            input,
            max_length,
            element_cap,
            probe,
        } => run_tile(input, *max_length, *element_cap, probe, cli.seed),
        Command::Quotient {
            input,
            prime,
            max_length,
            element_cap,
            order_cap,
            order_bound,
        } => run_quotient(
            input,
            *prime,
            *max_length,
            *element_cap,
            *order_cap,
            *order_bound,
            cli.seed,
        ),
        Command::Plinv { input, samples } => run_plinv(input, *samples, cli.seed),
    }
}

fn load_complex_configuration(
    path: &Path,
) -> anyhow::Result<(CubicalComplex2, BallConfiguration)> {
    match input::load_input(path)? {
        input::LoadedInput::Complex(k) => {
            let conf = generate_configuration(&k)?;
            Ok((k, conf))
        }
        input::LoadedInput::Balls(_) => {
            anyhow::bail!("{} supplies balls; this command needs a complex", path.display())
        }
    }
}

fn spheres_from_input(path: &Path) -> anyhow::Result<(Vec<Sphere>, &'static str)> {
    match input::load_input(path)? {
        input::LoadedInput::Complex(k) => {
            let conf = generate_configuration(&k)?;
            Ok((conf.spheres(), "complex"))
        }
        input::LoadedInput::Balls(spheres) => Ok((spheres, "balls")),
    }
}

fn sphere_listing(spheres: &[Sphere]) -> Vec<Value> {
    spheres
        .iter()
        .enumerate()
        .map(|(index, s)| {
            json!({
                "index": index,
                "center": format_vec4(s.center()),
                "center_approx": vec4_to_f64(s.center()),
                "radius_sq": format_rat(s.radius_sq()),
                "radius_sq_approx": moebius4::rat::rat_to_f64(s.radius_sq()),
            })
        })
        .collect()
}

fn run_generate(path: &Path, seed: u64) -> anyhow::Result<(Value, bool)> {
    let (k, conf) = load_complex_configuration(path)?;
    let balls: Vec<report::BallJson> = conf
        .balls()
        .iter()
        .enumerate()
        .map(|(i, b)| report::ball_json(i, b))
        .collect();
    let value = json!({
        "command": "generate",
        "seed": seed,
        "complex": k.to_json_value(),
        "ball_count": conf.ball_count(),
        "balls": balls,
        "status": status(true),
    });
    Ok((value, true))
}

fn run_audit(path: &Path, grid_step: &str, seed: u64) -> anyhow::Result<(Value, bool)> {
    let step = parse_rat(grid_step).context("invalid --grid-step")?;
    match input::load_input(path)? {
        input::LoadedInput::Complex(k) => {
            let conf = generate_configuration(&k)?;
            let report_data = audit(&conf);
            let relations = match GroupPresentation::from_pair_audit(&report_data.pairs) {
                Ok(pres) => Some(moebius4::coxeter::verify_relations(&conf.spheres(), &pres)),
                Err(PresentationError::Violations(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let coverage = coverage_check(&conf, &k, &step)?;
            let pass = report_data.pairs.violations.is_empty()
                && relations.as_ref().is_some_and(|r| r.ok())
                && report_data.nerve_iso.isomorphic
                && coverage.covered();
            let value = json!({
                "command": "audit",
                "seed": seed,
                "input_kind": "complex",
                "complex": k.to_json_value(),
                "ball_count": conf.ball_count(),
                "audit": report::audit_json(&report_data, conf.ball_count()),
                "relations": relations.as_ref().map(report::relations_json),
                "coverage": report::coverage_json(&coverage),
                "status": status(pass),
            });
            Ok((value, pass))
        }
        input::LoadedInput::Balls(spheres) => {
            let pairs = pair_audit(&spheres)?;
            let relations = match GroupPresentation::from_pair_audit(&pairs) {
                Ok(pres) => Some(moebius4::coxeter::verify_relations(&spheres, &pres)),
                Err(PresentationError::Violations(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let pass =
                pairs.violations.is_empty() && relations.as_ref().is_some_and(|r| r.ok());
            let value = json!({
                "command": "audit",
                "seed": seed,
                "input_kind": "balls",
                "spheres": sphere_listing(&spheres),
                "audit": report::pair_audit_json(&pairs, spheres.len()),
                "relations": relations.as_ref().map(report::relations_json),
                "status": status(pass),
            });
            Ok((value, pass))
        }
    }
}

fn run_nerve(path: &Path, max_dim: usize, seed: u64) -> anyhow::Result<(Value, bool)> {
    let (k, conf) = load_complex_configuration(path)?;
    let nerve_complex = nerve(&conf, max_dim);
    let check = moebius4::construction::canonical_map_check(&conf, &k);
    let pass = check.isomorphic;
    let value = json!({
        "command": "nerve",
        "seed": seed,
        "max_dim": max_dim,
        "vertex_cells": conf
            .balls()
            .iter()
            .map(|b| CellJson::from_cell(&b.cell))
            .collect::<Vec<_>>(),
        "nerve": report::simplicial_complex_json(&nerve_complex),
        "canonical_map": report::canonical_map_json(&check),
        "status": status(pass),
    });
    Ok((value, pass))
}

fn run_enumerate(
    path: &Path,
    max_length: usize,
    element_cap: usize,
    seed: u64,
    output: Option<&PathBuf>,
) -> anyhow::Result<(Value, bool)> {
    anyhow::ensure!(element_cap >= 1, "--element-cap must be at least 1");
    let (spheres, input_kind) = spheres_from_input(path)?;
    let pairs = pair_audit(&spheres)?;
    let matrix = enumerate_growth(&spheres, max_length, element_cap, seed);
    let (value, pass) = match GroupPresentation::from_pair_audit(&pairs) {
        Ok(pres) => {
            let words = abstract_growth(&pres, max_length, element_cap);
            let growth = report::growth_json(&matrix, &words, max_length, element_cap);
            let pass = growth.growth_agrees
                && !growth.matrix_truncated
                && !growth.abstract_truncated
                && growth.lorentz_ok;
            if let Some(out) = output {
                let csv = report::growth_csv(&matrix.growth, &words.growth);
                let csv_path = out.with_extension("csv");
                std::fs::write(&csv_path, csv)
                    .with_context(|| format!("cannot write {}", csv_path.display()))?;
            }
            (
                json!({
                    "command": "enumerate",
                    "seed": seed,
                    "input_kind": input_kind,
                    "generators": spheres.len(),
                    "growth": growth,
                    "status": status(pass),
                }),
                pass,
            )
        }
        Err(PresentationError::Violations(violations)) => {
            // no abstract oracle without a Coxeter presentation; report the
            // matrix side and the violations that block the comparison
            let value = json!({
                "command": "enumerate",
                "seed": seed,
                "input_kind": input_kind,
                "generators": spheres.len(),
                "matrix_growth": matrix.growth,
                "matrix_total": matrix.total_elements,
                "matrix_truncated": matrix.truncated,
                "lorentz_checked": matrix.lorentz_checked,
                "lorentz_ok": matrix.lorentz_ok,
                "violations": violations.len(),
                "status": status(false),
            });
            (value, false)
        }
        Err(e) => return Err(e.into()),
    };
    Ok((value, pass))
}

fn run_tile(
    path: &Path,
    max_length: usize,
    element_cap: usize,
    probe: &str,
    seed: u64,
) -> anyhow::Result<(Value, bool)> {
    anyhow::ensure!(element_cap >= 1, "--element-cap must be at least 1");
    let (spheres, input_kind) = spheres_from_input(path)?;
    let probe_point = input::parse_probe(probe)?;
    let tiling = orbit_tiling(&spheres, max_length, element_cap, &probe_point)?;
    let pass = tiling.all_distinct && tiling.escapes_ok && !tiling.truncated;
    let value = json!({
        "command": "tile",
        "seed": seed,
        "input_kind": input_kind,
        "generators": spheres.len(),
        "tiling": report::orbit_json(&tiling, &probe_point, max_length),
        "status": status(pass),
    });
    Ok((value, pass))
}

fn run_quotient(
    path: &Path,
    prime: u64,
    max_length: usize,
    element_cap: usize,
    order_cap: usize,
    order_bound: u32,
    seed: u64,
) -> anyhow::Result<(Value, bool)> {
    anyhow::ensure!(element_cap >= 1, "--element-cap must be at least 1");
    let (spheres, input_kind) = spheres_from_input(path)?;
    let pairs = pair_audit(&spheres)?;
    let pres = match GroupPresentation::from_pair_audit(&pairs) {
        Ok(pres) => pres,
        Err(PresentationError::Violations(violations)) => {
            let value = json!({
                "command": "quotient",
                "seed": seed,
                "input_kind": input_kind,
                "violations": violations
                    .iter()
                    .map(|v| json!({"i": v.i, "j": v.j, "reason": v.reason.label()}))
                    .collect::<Vec<_>>(),
                "status": status(false),
            });
            return Ok((value, false));
        }
        Err(e) => return Err(e.into()),
    };
    let quotient = congruence_quotient(&spheres, &pres, prime, order_cap, seed)?;
    let torsion = torsion_survival_check(&spheres, &quotient, max_length, element_cap, order_bound);
    let pass = quotient.relations_ok
        && quotient.functoriality.ok
        && torsion.ok()
        && !torsion.truncated;
    let value = json!({
        "command": "quotient",
        "seed": seed,
        "input_kind": input_kind,
        "quotient": report::quotient_json(&quotient),
        "torsion": report::torsion_json(&torsion),
        "status": status(pass),
    });
    Ok((value, pass))
}

/// Sample set for the involution check: seeded random rational points, the
/// center, ∞, and 20 exact boundary points.
fn plinv_samples(cube: &CubeInversion, count: usize, seed: u64) -> Vec<PointOrInfinity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<PointOrInfinity> = Vec::with_capacity(count + 22);
    for _ in 0..count {
        samples.push(PointOrInfinity::Finite(std::array::from_fn(|_| {
            rat(rng.gen_range(-24..=24), rng.gen_range(1..=9))
        })));
    }
    samples.push(PointOrInfinity::Finite(cube.center().clone()));
    samples.push(PointOrInfinity::Infinity);
    let s = cube.half_width().clone();
    for _ in 0..20 {
        let axis = rng.gen_range(0..4usize);
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut p = cube.center().clone();
        for (i, coord) in p.iter_mut().enumerate() {
            if i == axis {
                *coord += rat(sign, 1) * &s;
            } else {
                let den = rng.gen_range(1..=8i64);
                let num = rng.gen_range(-den..=den);
                *coord += rat(num, den) * &s;
            }
        }
        samples.push(PointOrInfinity::Finite(p));
    }
    samples
}

fn run_plinv(path: &Path, sample_count: usize, seed: u64) -> anyhow::Result<(Value, bool)> {
    let cube = input::load_cube(path)?;
    let samples = plinv_samples(&cube, sample_count, seed);
    let report_data = involution_check(&cube, &samples);
    let pass = report_data.ok();
    let value = json!({
        "command": "plinv",
        "seed": seed,
        "center": format_vec4(cube.center()),
        "half_width": format_rat(cube.half_width()),
        "random_samples": sample_count,
        "involution": report::involution_json(&report_data),
        "status": status(pass),
    });
    Ok((value, pass))
}
