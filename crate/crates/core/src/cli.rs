//! Command-line front end.
//!
//! Exit codes: `0` success, `1` I/O or numerical failure, `2` malformed input
//! or flags, `3` singular leading coefficient, `4` failed validation.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bench::{emit_table, run_experiment, BenchConfig, ClassId, TableFormat};
use crate::bounds::{bound, cost_estimate, enhance, parse_sides, BoundOptions, CostContext};
use crate::error::{Error, Result};
use crate::lification::{det_equivalence_check, divisors, lify};
use crate::matpoly::{MatrixPoly, MonicSide};
use crate::matrix::NormKind;
use crate::oracle::{eigenvalues, match_spectra, validate_bounds, Validation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "polybound",
    version,
    about = "Eigenvalue modulus bounds for matrix polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Upper (and optionally lower) bounds from enhanced Cauchy radii.
    Bound(BoundArgs),
    /// Write the ℓ-ification with parameter k.
    Lify(LifyArgs),
    /// Random-class ratio and cost tables.
    Bench(BenchArgs),
    /// Check determinant and spectral equivalence for every divisor k.
    Verify(VerifyArgs),
    /// Multiplication work estimates along an enhancement ladder.
    Cost(CostArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "one")]
    pub norm: NormKind,
    #[arg(long, default_value_t = 0)]
    pub steps: usize,
    /// `L`/`R` pattern (cycled to `--steps`) or `alternating`.
    #[arg(long, default_value = "L")]
    pub sides: String,
    #[arg(long)]
    pub lower: bool,
    /// Compare every bound with the computed spectrum.
    #[arg(long)]
    pub validate: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "I")]
    pub class: ClassId,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
    /// Full-scale dimensions instead of the scaled stand-ins.
    #[arg(long)]
    pub full: bool,
    #[arg(long, default_value = "md")]
    pub format: TableFormat,
    #[arg(long, default_value = "L")]
    pub sides: String,
    #[arg(long, default_value = "one")]
    pub norm: NormKind,
    /// Degree for `--class custom`.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    /// Coefficient size for `--class custom`.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Number of random determinant sample points.
    #[arg(long, default_value_t = 20)]
    pub zs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 3)]
    pub steps: usize,
    #[arg(long, default_value = "L")]
    pub sides: String,
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::SingularLeading { .. } => EXIT_SINGULAR,
            Error::Io(_) | Error::EigenFailure | Error::Monomial => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: CliCommand) -> CliResult {
    match cmd {
        CliCommand::Bound(a) => cmd_bound(a),
        CliCommand::Lify(a) => cmd_lify(a),
        CliCommand::Bench(a) => cmd_bench(a),
        CliCommand::Verify(a) => cmd_verify(a),
        CliCommand::Cost(a) => cmd_cost(a),
    }
}

fn read_poly(path: &PathBuf) -> Result<MatrixPoly> {
    let text = std::fs::read_to_string(path)?;
    MatrixPoly::from_json(&text)
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn check_divisor(k: usize, degree: usize) -> Result<()> {
    if k == 0 || degree == 0 || !degree.is_multiple_of(k) {
        return Err(Error::NotDivisor { k, degree });
    }
    Ok(())
}

fn cmd_bound(a: BoundArgs) -> CliResult {
    let p = read_poly(&a.input)?;
    check_divisor(a.k, p.degree())?;
    let opts = BoundOptions {
        k: a.k,
        norm: a.norm,
        sides: parse_sides(&a.sides, a.steps)?,
        lower: a.lower,
    };
    let report = bound(&p, &opts)?;
    write_output(a.out.as_ref(), &report.to_json()?)?;
    if a.validate {
        let v: Validation = validate_bounds(&p, &report)?;
        eprintln!("{}", serde_json::to_string(&v).map_err(Error::from)?);
        if !v.passed {
            return Ok(EXIT_VALIDATION);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_lify(a: LifyArgs) -> CliResult {
    let p = read_poly(&a.input)?;
    check_divisor(a.k, p.degree())?;
    let l = lify(&p, a.k)?;
    write_output(a.out.as_ref(), &l.to_json()?)?;
    Ok(EXIT_OK)
}

fn cmd_bench(a: BenchArgs) -> CliResult {
    let mut cfg = match a.class {
        ClassId::Custom => BenchConfig::custom(a.degree, a.m),
        other => BenchConfig::for_class(other, a.full),
    };
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.norm = a.norm;
    cfg.sides = parse_sides(&a.sides, a.steps)?;
    cfg.validate()?;
    let table = run_experiment(&cfg)?;
    write_output(a.out.as_ref(), &emit_table(&table, a.format)?)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyEntry {
    k: usize,
    q: usize,
    det_residual: f64,
    /// Largest matched eigenvalue distance over `max(1, max|λ|)`.
    spectral_residual: f64,
    passed: bool,
}

/// Points with modulus in `[0.5, 1.5]` and uniform argument.
fn sample_points(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(0.5..1.5);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let p = read_poly(&a.input)?;
    if p.degree() == 0 {
        return Err(Error::Parse("verification needs degree at least 1".into()).into());
    }
    let zs = sample_points(a.zs, a.seed);
    let reference = eigenvalues(&p)?;
    let scale = reference.max_modulus.max(1.0);
    let mut entries = Vec::new();
    for k in divisors(p.degree()) {
        let l = lify(&p, k)?;
        let det_residual = det_equivalence_check(&p, &l, &zs);
        let spectrum = eigenvalues(l.poly())?;
        let spectral_residual = match_spectra(&reference.values, &spectrum.values) / scale;
        entries.push(VerifyEntry {
            k,
            q: l.q(),
            det_residual,
            spectral_residual,
            passed: det_residual <= a.tol && spectral_residual <= a.tol,
        });
    }
    let all_passed = entries.iter().all(|e| e.passed);
    let text = serde_json::to_string_pretty(&serde_json::json!({
        "passed": all_passed,
        "tol": a.tol,
        "checks": entries,
    }))
    .map_err(Error::from)?;
    write_output(None, &text)?;
    Ok(if all_passed { EXIT_OK } else { EXIT_VALIDATION })
}

#[derive(Serialize)]
struct CostEntry {
    step: usize,
    degree: usize,
    s: usize,
    nu: usize,
    /// `s² / (ν k m)` of the polynomial after `step` enhancements.
    estimate: f64,
    /// `estimate` over the same quantity for the monic input with `k = 1`.
    normalized: f64,
    /// Cumulative normalized multiplication work spent reaching this step.
    cumulative_work: f64,
}

fn cmd_cost(a: CostArgs) -> CliResult {
    let p = read_poly(&a.input)?;
    check_divisor(a.k, p.degree())?;
    let m = p.m();
    let monic = p.make_monic(MonicSide::Pre)?;
    let baseline = cost_estimate(&monic, 1, m)?;
    let ctx = CostContext::new(&monic, a.k)?;
    let sides = parse_sides(&a.sides, a.steps)?;

    let mut current = lify(&monic, a.k)?.into_poly();
    let mut work = 0.0;
    let mut entries = Vec::new();
    for step in 0..=sides.len() {
        let (s, nu) = current.nnz_stats();
        let estimate = cost_estimate(&current, a.k, m)?;
        entries.push(CostEntry {
            step,
            degree: current.degree(),
            s,
            nu,
            estimate,
            normalized: estimate / baseline,
            cumulative_work: work,
        });
        if step < sides.len() {
            work += ctx.normalized_work(&current)?;
            current = enhance(&current, sides[step])?;
        }
    }
    let text = serde_json::to_string_pretty(&serde_json::json!({
        "k": a.k,
        "q": p.degree() / a.k,
        "m": m,
        "baseline_estimate": baseline,
        "steps": entries,
    }))
    .map_err(Error::from)?;
    write_output(None, &text)?;
    Ok(EXIT_OK)
}
