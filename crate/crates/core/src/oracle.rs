//! Reference eigenvalues through the Frobenius companion matrix, used to
//! validate bounds and as the denominator of benchmark ratios.

use nalgebra::linalg::Schur;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::lification::frobenius_companion;
use crate::matpoly::{MatrixPoly, MonicSide};
use crate::matrix::{ComplexMatrix, NormKind};

/// Absolute slack on moduli when checking bounds against computed spectra.
pub const VALIDATION_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
    pub max_modulus: f64,
    pub min_modulus: f64,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>) -> Self {
        let max_modulus = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let min_modulus = values
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        Spectrum {
            values,
            max_modulus,
            min_modulus,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest normalized residual `σ_min(P(λ)) / Σ ‖A_j‖ |λ|^j` over up to
    /// `count` eigenvalues spread across the spectrum. `σ_min(P(λ))` is the
    /// residual `‖P(λ)v‖` of the best unit eigenvector `v`.
    pub fn spot_check(&self, p: &MatrixPoly, count: usize) -> f64 {
        let len = self.values.len();
        if len == 0 || count == 0 {
            return 0.0;
        }
        let picks = count.min(len);
        (0..picks)
            .map(|t| self.values[t * len / picks])
            .map(|lam| {
                let scale: f64 = p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, a)| a.norm(NormKind::Two) * lam.norm().powi(j as i32))
                    .sum();
                let sigma = p
                    .evaluate(lam)
                    .into_inner()
                    .svd(false, false)
                    .singular_values
                    .iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min);
                if scale == 0.0 {
                    sigma
                } else {
                    sigma / scale
                }
            })
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.values.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }
}

/// All eigenvalues of a dense square matrix from its complex Schur form.
pub fn matrix_eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let dim = a.dim();
    let schur = Schur::try_new(a.inner().clone(), f64::EPSILON, 1000 + 200 * dim)
        .ok_or(Error::EigenFailure)?;
    let (_, t) = schur.unpack();
    let values: Vec<Complex64> = (0..dim).map(|i| t[(i, i)]).collect();
    if values
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::EigenFailure);
    }
    Ok(values)
}

/// The `nm` finite eigenvalues of `p`, which must have a nonsingular leading
/// coefficient.
pub fn eigenvalues(p: &MatrixPoly) -> Result<Spectrum> {
    let monic = p.make_monic(MonicSide::Pre)?;
    let companion = frobenius_companion(&monic)?;
    Ok(Spectrum::new(matrix_eigenvalues(&companion)?))
}

/// Greedy nearest-neighbour matching of two eigenvalue multisets after
/// sorting by modulus and then argument. Returns the largest matched
/// distance, or `+∞` if the sizes differ.
pub fn match_spectra(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let sort = |v: &[Complex64]| {
        let mut v = v.to_vec();
        v.sort_by(|x, y| {
            x.norm()
                .total_cmp(&y.norm())
                .then(x.arg().total_cmp(&y.arg()))
        });
        v
    };
    let a = sort(a);
    let mut pool = sort(b);
    let mut worst = 0.0_f64;
    for x in &a {
        let (idx, dist) = pool
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("pools have equal length");
        worst = worst.max(dist);
        pool.swap_remove(idx);
    }
    worst
}

/// Outcome of checking a bound report against the computed spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Validation {
    pub passed: bool,
    pub max_modulus: f64,
    pub min_modulus: f64,
    /// `radius − max|λ|` per step.
    pub upper_margins: Vec<f64>,
    /// `min|λ| − lower`, when a lower bound was reported.
    pub lower_margin: Option<f64>,
}

pub fn validate_against(spectrum: &Spectrum, report: &BoundReport) -> Validation {
    let upper_margins: Vec<f64> = report
        .steps
        .iter()
        .map(|s| s.radius - spectrum.max_modulus)
        .collect();
    let lower_margin = report.lower.map(|lb| spectrum.min_modulus - lb);
    let passed = upper_margins.iter().all(|&m| m >= -VALIDATION_SLACK)
        && lower_margin.is_none_or(|m| m >= -VALIDATION_SLACK);
    Validation {
        passed,
        max_modulus: spectrum.max_modulus,
        min_modulus: spectrum.min_modulus,
        upper_margins,
        lower_margin,
    }
}

/// Computes the spectrum of `p` and checks every rung of `report`.
pub fn validate_bounds(p: &MatrixPoly, report: &BoundReport) -> Result<Validation> {
    Ok(validate_against(&eigenvalues(p)?, report))
}
