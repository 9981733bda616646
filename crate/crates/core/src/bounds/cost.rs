//! Matrix-multiplication work estimates for enhancement steps.
//!
//! With `s` nonzero entries spread over `ν` coefficients of a `km × km`
//! polynomial, one enhancement multiplies a single coefficient into all the
//! others, which costs roughly `s² / (ν k m)` operations (in units of an
//! `m × m` product per `m³`).

use crate::error::{Error, Result};
use crate::matpoly::MatrixPoly;

/// `s² / (ν k m)` with `(s, ν)` from [`MatrixPoly::nnz_stats`]: `s` counts
/// every stored nonzero including the leading coefficient and `ν` the nonzero
/// non-leading coefficients.
pub fn cost_estimate(poly: &MatrixPoly, k: usize, m: usize) -> Result<f64> {
    let (s, nu) = poly.nnz_stats();
    if nu == 0 {
        return Err(Error::Monomial);
    }
    Ok((s * s) as f64 / (nu * k * m) as f64)
}

/// Work of applying one enhancement to `poly`, as tabulated in the benchmark
/// tables: `s` counts the nonzeros of the non-leading coefficients and `ν` is
/// the number of non-leading coefficient slots (the degree), so the average
/// density includes structurally zero coefficients.
pub fn enhancement_work(poly: &MatrixPoly, k: usize, m: usize) -> Result<f64> {
    let n = poly.degree();
    if poly.is_monomial() {
        return Err(Error::Monomial);
    }
    let s: usize = poly.coeffs()[..n].iter().map(|c| c.nnz()).sum();
    Ok((s * s) as f64 / (n * k * m) as f64)
}

/// Normalization context for reported costs: the unit is one enhancement of
/// the original (`k = 1`) monic polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostContext {
    pub k: usize,
    pub m: usize,
    pub baseline: f64,
}

impl CostContext {
    /// Context for enhancing `lified`, an ℓ-ification with parameter `k` of
    /// the monic `source`.
    pub fn new(source: &MatrixPoly, k: usize) -> Result<Self> {
        Ok(CostContext {
            k,
            m: source.m(),
            baseline: enhancement_work(source, 1, source.m())?,
        })
    }

    pub fn normalized_work(&self, poly: &MatrixPoly) -> Result<f64> {
        Ok(enhancement_work(poly, self.k, self.m)? / self.baseline)
    }
}
