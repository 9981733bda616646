//! Random monic polynomial classes and the ratio/cost tables built from them.
//!
//! Each class draws the real and imaginary parts of every non-leading
//! coefficient entry uniformly from `[-2, 2]`; the leading coefficient is the
//! identity. For every sample and every `q = n/k`, the ℓ-ification is
//! enhanced `steps` times and each rung's Cauchy radius is divided by the
//! largest eigenvalue modulus. Table cells are sample means.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound, BoundOptions, Side};
use crate::error::{Error, Result};
use crate::lification::divisors;
use crate::matpoly::MatrixPoly;
use crate::matrix::{ComplexMatrix, NormKind};
use crate::oracle::eigenvalues;

/// Environment variable capping the worker count (`0` or unset = automatic).
pub const THREADS_ENV: &str = "POLYBOUND_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassId {
    I,
    II,
    III,
    Custom,
}

impl std::str::FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(ClassId::I),
            "II" | "2" => Ok(ClassId::II),
            "III" | "3" => Ok(ClassId::III),
            "CUSTOM" => Ok(ClassId::Custom),
            other => Err(Error::Parse(format!("unknown class '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub class_id: ClassId,
    /// Full-scale dimensions rather than the desk-scale stand-ins (II, III).
    pub full: bool,
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub seed: u64,
    /// Divisors of `n` to ℓ-ify with; columns are reported by ascending `q`.
    pub ks: Vec<usize>,
    /// One side per enhancement step.
    pub sides: Vec<Side>,
    pub norm: NormKind,
}

impl BenchConfig {
    const DEFAULT_SAMPLES: usize = 100;
    const DEFAULT_SEED: u64 = 42;
    const DEFAULT_STEPS: usize = 3;

    fn with_dims(class_id: ClassId, full: bool, n: usize, m: usize, qs: &[usize]) -> Self {
        BenchConfig {
            class_id,
            full,
            n,
            m,
            samples: Self::DEFAULT_SAMPLES,
            seed: Self::DEFAULT_SEED,
            ks: qs.iter().map(|q| n / q).collect(),
            sides: vec![Side::Left; Self::DEFAULT_STEPS],
            norm: NormKind::One,
        }
    }

    /// `4 × 4`, degree 18.
    pub fn class_one() -> Self {
        Self::with_dims(ClassId::I, true, 18, 4, &[1, 2, 3, 6, 9, 18])
    }

    /// `100 × 100`, degree 10 when `full`; otherwise `20 × 20`, degree 10.
    pub fn class_two(full: bool) -> Self {
        let m = if full { 100 } else { 20 };
        Self::with_dims(ClassId::II, full, 10, m, &[1, 2, 5, 10])
    }

    /// `10 × 10`, degree 100 when `full`; otherwise `10 × 10`, degree 40.
    pub fn class_three(full: bool) -> Self {
        if full {
            Self::with_dims(
                ClassId::III,
                true,
                100,
                10,
                &[1, 2, 4, 5, 10, 20, 25, 50, 100],
            )
        } else {
            Self::with_dims(ClassId::III, false, 40, 10, &divisors(40))
        }
    }

    /// Arbitrary dimensions over every divisor of `n`.
    pub fn custom(n: usize, m: usize) -> Self {
        Self::with_dims(ClassId::Custom, true, n, m, &divisors(n))
    }

    pub fn for_class(class_id: ClassId, full: bool) -> Self {
        match class_id {
            ClassId::I => Self::class_one(),
            ClassId::II => Self::class_two(full),
            ClassId::III => Self::class_three(full),
            ClassId::Custom => Self::custom(6, 2),
        }
    }

    pub fn steps(&self) -> usize {
        self.sides.len()
    }

    /// Class label; scaled stand-ins carry a prime.
    pub fn label(&self) -> String {
        match (self.class_id, self.full) {
            (ClassId::I, _) => "I".into(),
            (ClassId::II, true) => "II".into(),
            (ClassId::II, false) => "II'".into(),
            (ClassId::III, true) => "III".into(),
            (ClassId::III, false) => "III'".into(),
            (ClassId::Custom, _) => "custom".into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::Parse("n and m must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Parse("samples must be at least 1".into()));
        }
        if self.ks.is_empty() {
            return Err(Error::Parse("no ℓ-ification parameters given".into()));
        }
        if let Some(&k) = self
            .ks
            .iter()
            .find(|&&k| k == 0 || !self.n.is_multiple_of(k))
        {
            return Err(Error::NotDivisor { k, degree: self.n });
        }
        Ok(())
    }

    /// Column `q` values, ascending, with their `k`.
    fn columns(&self) -> Vec<(usize, usize)> {
        let mut cols: Vec<(usize, usize)> = self.ks.iter().map(|&k| (self.n / k, k)).collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }
}

/// Sample `index` of the configured class. Each sample has its own ChaCha
/// stream keyed by `(seed, index)`, so results do not depend on scheduling.
pub fn generate_sample(cfg: &BenchConfig, index: u64) -> MatrixPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let m = cfg.m;
    let mut coeffs: Vec<ComplexMatrix> = (0..cfg.n)
        .map(|_| {
            ComplexMatrix::from_fn(m, |_, _| {
                let re = rng.gen_range(-2.0..=2.0);
                let im = rng.gen_range(-2.0..=2.0);
                Complex64::new(re, im)
            })
        })
        .collect();
    coeffs.push(ComplexMatrix::identity(m));
    MatrixPoly::new(coeffs).expect("generated coefficients share one size")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCell {
    pub q: usize,
    pub k: usize,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    /// Mean cumulative multiplication work; `None` for the unenhanced row.
    pub mean_cost: Option<f64>,
    pub eq_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub step: usize,
    pub side: Option<Side>,
    pub cells: Vec<BenchCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchTable {
    pub class: String,
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub seed: u64,
    pub norm: NormKind,
    pub qs: Vec<usize>,
    pub rows: Vec<BenchRow>,
    pub excluded_samples: usize,
}

impl BenchTable {
    pub fn cell(&self, step: usize, q: usize) -> Option<&BenchCell> {
        self.rows.get(step)?.cells.iter().find(|c| c.q == q)
    }

    /// Columns whose mean ratio increases going down, beyond `rel_tol`.
    pub fn column_violations(&self, rel_tol: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for pair in self.rows.windows(2) {
            for (above, below) in pair[0].cells.iter().zip(&pair[1].cells) {
                if below.mean_ratio > above.mean_ratio * (1.0 + rel_tol) {
                    out.push((pair[1].step, below.q));
                }
            }
        }
        out
    }

    /// Adjacent row-0 columns where a larger `q` gives a larger mean ratio.
    /// This trend is empirical, so callers report rather than fail on it.
    pub fn row0_trend_violations(&self) -> Vec<usize> {
        let Some(row) = self.rows.first() else {
            return Vec::new();
        };
        row.cells
            .windows(2)
            .filter(|w| w[1].mean_ratio > w[0].mean_ratio)
            .map(|w| w[1].q)
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

struct SampleOutcome {
    /// `[column][step]`
    ratios: Vec<Vec<f64>>,
    costs: Vec<Vec<f64>>,
    degrees: Vec<Vec<usize>>,
}

fn run_sample(cfg: &BenchConfig, cols: &[(usize, usize)], index: u64) -> Result<SampleOutcome> {
    let poly = generate_sample(cfg, index);
    let max_modulus = eigenvalues(&poly)?.max_modulus;
    let mut out = SampleOutcome {
        ratios: Vec::with_capacity(cols.len()),
        costs: Vec::with_capacity(cols.len()),
        degrees: Vec::with_capacity(cols.len()),
    };
    for &(_, k) in cols {
        let opts = BoundOptions {
            k,
            norm: cfg.norm,
            sides: cfg.sides.clone(),
            lower: false,
        };
        let report = bound(&poly, &opts)?;
        out.ratios.push(
            report
                .steps
                .iter()
                .map(|s| s.radius / max_modulus)
                .collect(),
        );
        out.costs
            .push(report.steps.iter().map(|s| s.cost).collect());
        out.degrees
            .push(report.steps.iter().map(|s| s.equation_degree).collect());
    }
    Ok(out)
}

/// Pairwise summation; the result depends only on the order of `xs`.
fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        len => {
            let (a, b) = xs.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len().is_multiple_of(2) {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    }
}

fn worker_count() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs every sample of `cfg` and aggregates the ratio and cost tables.
/// Samples whose eigenvalue computation fails are dropped and counted in
/// `excluded_samples`.
pub fn run_experiment(cfg: &BenchConfig) -> Result<BenchTable> {
    cfg.validate()?;
    let cols = cfg.columns();
    let work = || -> Vec<Result<SampleOutcome>> {
        (0..cfg.samples as u64)
            .into_par_iter()
            .map(|i| run_sample(cfg, &cols, i))
            .collect()
    };
    let results = match worker_count() {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut included = Vec::with_capacity(results.len());
    let mut excluded = 0;
    for r in results {
        match r {
            Ok(s) => included.push(s),
            Err(Error::EigenFailure) => excluded += 1,
            Err(e) => return Err(e),
        }
    }
    if excluded > 0 {
        eprintln!("warning: {excluded} sample(s) excluded after eigenvalue failures");
    }

    let steps = cfg.steps();
    let mut rows = Vec::new();
    if !included.is_empty() {
        for step in 0..=steps {
            let cells = cols
                .iter()
                .enumerate()
                .map(|(c, &(q, k))| {
                    let ratios: Vec<f64> = included.iter().map(|s| s.ratios[c][step]).collect();
                    let costs: Vec<f64> = included.iter().map(|s| s.costs[c][step]).collect();
                    let count = included.len() as f64;
                    BenchCell {
                        q,
                        k,
                        mean_ratio: pairwise_sum(&ratios) / count,
                        median_ratio: median(&ratios),
                        mean_cost: (step > 0).then(|| pairwise_sum(&costs) / count),
                        eq_degree: included[0].degrees[c][step],
                    }
                })
                .collect();
            rows.push(BenchRow {
                step,
                side: step.checked_sub(1).map(|t| cfg.sides[t]),
                cells,
            });
        }
    }

    Ok(BenchTable {
        class: cfg.label(),
        n: cfg.n,
        m: cfg.m,
        samples: cfg.samples,
        seed: cfg.seed,
        norm: cfg.norm,
        qs: cols.iter().map(|&(q, _)| q).collect(),
        rows,
        excluded_samples: excluded,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Parse(format!("unknown format '{other}'"))),
        }
    }
}

pub const CSV_HEADER: &str =
    "class,n,m,samples,seed,norm,q,step,side,mean_ratio,mean_cost,eq_degree,excluded_samples";

pub fn emit_table(t: &BenchTable, format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Json => Ok(serde_json::to_string_pretty(t)?),
        TableFormat::Csv => Ok(emit_csv(t)),
        TableFormat::Markdown => Ok(emit_markdown(t)),
    }
}

fn emit_csv(t: &BenchTable) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &t.rows {
        for cell in &row.cells {
            let cost = cell
                .mean_cost
                .map(|c| format!("{c:.6}"))
                .unwrap_or_default();
            let side = row.side.map_or("none", Side::as_str);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{:.6},{},{},{}",
                t.class,
                t.n,
                t.m,
                t.samples,
                t.seed,
                t.norm,
                cell.q,
                row.step,
                side,
                cell.mean_ratio,
                cost,
                cell.eq_degree,
                t.excluded_samples
            );
        }
    }
    out
}

fn emit_markdown(t: &BenchTable) -> String {
    let header =
        t.qs.iter()
            .map(|q| format!("q={q}"))
            .collect::<Vec<_>>()
            .join(" | ");
    let rule = vec!["---"; t.qs.len()].join(" | ");
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Class {} (n={}, m={}, {} samples, seed {}, {}-norm): multiplication cost\n",
        t.class, t.n, t.m, t.samples, t.seed, t.norm
    );
    let _ = writeln!(out, "{header}\n{rule}");
    for row in &t.rows {
        let line = row
            .cells
            .iter()
            .map(|c| match c.mean_cost {
                Some(cost) => format!("{cost:.2} ({})", c.eq_degree),
                None => format!("* ({})", c.eq_degree),
            })
            .collect::<Vec<_>>()
            .join(" | ");
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(
        out,
        "\nClass {}: mean Cauchy radius / max |eigenvalue|\n",
        t.class
    );
    let _ = writeln!(out, "{header}\n{rule}");
    for row in &t.rows {
        let line = row
            .cells
            .iter()
            .map(|c| format!("{:.2} ({})", c.mean_ratio, c.eq_degree))
            .collect::<Vec<_>>()
            .join(" | ");
        let _ = writeln!(out, "{line}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> BenchConfig {
        let mut cfg = BenchConfig::custom(4, 2);
        cfg.samples = 6;
        cfg.seed = 7;
        cfg.sides = vec![Side::Left, Side::Right];
        cfg
    }

    #[test]
    fn class_one_dimensions() {
        let cfg = BenchConfig::class_one();
        let p = generate_sample(&cfg, 0);
        assert_eq!((p.degree(), p.m(), p.coeffs().len()), (18, 4, 19));
        assert!(p.is_monic());
        assert_eq!(
            cfg.columns().iter().map(|c| c.0).collect::<Vec<_>>(),
            vec![1, 2, 3, 6, 9, 18]
        );
    }

    #[test]
    fn scaled_and_full_dimensions() {
        let two = BenchConfig::class_two(false);
        assert_eq!((two.n, two.m, two.label().as_str()), (10, 20, "II'"));
        let three = BenchConfig::class_three(false);
        assert_eq!((three.n, three.m, three.label().as_str()), (40, 10, "III'"));
        let full = BenchConfig::class_three(true);
        assert_eq!((full.n, full.m, full.ks.len()), (100, 10, 9));
        assert!(full.validate().is_ok());
    }

    #[test]
    fn samples_are_deterministic_and_independent() {
        let cfg = BenchConfig::class_one();
        assert_eq!(generate_sample(&cfg, 3), generate_sample(&cfg, 3));
        assert_ne!(generate_sample(&cfg, 3), generate_sample(&cfg, 4));
        let mut other = cfg.clone();
        other.seed += 1;
        assert_ne!(generate_sample(&cfg, 3), generate_sample(&other, 3));
    }

    #[test]
    fn entries_are_uniform_on_interval() {
        let mut cfg = BenchConfig::custom(1, 50);
        cfg.seed = 11;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut count = 0.0;
        for i in 0..4 {
            let p = generate_sample(&cfg, i);
            for z in p.coeff(0).inner().iter() {
                assert!((-2.0..=2.0).contains(&z.re) && (-2.0..=2.0).contains(&z.im));
                sum += z;
                count += 1.0;
            }
        }
        assert_eq!(count, 10_000.0);
        assert!((sum.re / count).abs() < 0.05 && (sum.im / count).abs() < 0.05);
    }

    #[test]
    fn validate_rejects_bad_configs() {
        let mut cfg = BenchConfig::custom(6, 2);
        cfg.ks = vec![4];
        assert!(matches!(
            cfg.validate(),
            Err(Error::NotDivisor { k: 4, degree: 6 })
        ));
        let mut cfg = BenchConfig::custom(6, 2);
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn small_experiment_shape_and_invariants() {
        let t = run_experiment(&small_cfg()).unwrap();
        assert_eq!(t.qs, vec![1, 2, 4]);
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.excluded_samples, 0);
        assert!(t.rows[0].cells.iter().all(|c| c.mean_cost.is_none()));
        assert!(t.rows[1].cells.iter().all(|c| c.mean_cost.is_some()));
        assert_eq!(t.rows[2].side, Some(Side::Right));
        assert!(t.column_violations(1e-10).is_empty());
        for row in &t.rows {
            for c in &row.cells {
                assert!(c.mean_ratio >= 1.0 - 1e-6);
            }
        }
        // degrees: q, q + 1, q + 3
        let degrees: Vec<usize> = t.rows.iter().map(|r| r.cells[0].eq_degree).collect();
        assert_eq!(degrees, vec![1, 2, 4]);
    }

    #[test]
    fn zero_steps_gives_single_row() {
        let mut cfg = small_cfg();
        cfg.sides.clear();
        cfg.samples = 1;
        let t = run_experiment(&cfg).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].cells.iter().all(|c| c.mean_cost.is_none()));
        let csv = emit_table(&t, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + t.qs.len());
    }

    #[test]
    fn experiment_is_reproducible_across_thread_counts() {
        let cfg = small_cfg();
        let a = run_experiment(&cfg).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| run_experiment(&cfg)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn emitters() {
        let t = run_experiment(&small_cfg()).unwrap();
        let csv = emit_table(&t, TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().next().unwrap(), CSV_HEADER);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("custom,4,2,6,7,one,1,0,none,"));
        let md = emit_table(&t, TableFormat::Markdown).unwrap();
        assert!(md.contains("q=1 | q=2 | q=4"));
        assert!(md.contains("* (1) | * (2) | * (4)"));
        let json = emit_table(&t, TableFormat::Json).unwrap();
        assert_eq!(BenchTable::from_json(&json).unwrap(), t);
    }

    #[test]
    fn empty_table_emits_headers_only() {
        let t = BenchTable {
            class: "I".into(),
            n: 18,
            m: 4,
            samples: 0,
            seed: 0,
            norm: NormKind::One,
            qs: vec![1, 2],
            rows: Vec::new(),
            excluded_samples: 0,
        };
        assert_eq!(
            emit_table(&t, TableFormat::Csv).unwrap().trim_end(),
            CSV_HEADER
        );
        let md = emit_table(&t, TableFormat::Markdown).unwrap();
        assert_eq!(md.matches("q=1 | q=2").count(), 2);
        assert!(!md.contains(") |") && !md.contains("* "));
    }

    #[test]
    fn pairwise_sum_matches_naive_on_integers() {
        let xs: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 5050.0);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
