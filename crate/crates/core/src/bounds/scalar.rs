//! The Cauchy radius equation `b_n zⁿ − b_{n−1} z^{n−1} − ... − b_0 = 0`.

use crate::error::{Error, Result};
use crate::matpoly::MatrixPoly;
use crate::matrix::NormKind;

/// Newton steps in `t = ln z` below this are relative changes in `z` at
/// rounding level.
const STEP_TOL: f64 = 1e-15;
const MAX_ITER: usize = 200;

/// Coefficients `b_j` of the scalar equation whose positive root is the
/// Cauchy radius; `b_n = ‖A_n^{-1}‖^{-1}` and `b_j = ‖A_j‖` below it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarBoundPoly {
    b: Vec<f64>,
    norm_kind: NormKind,
}

impl ScalarBoundPoly {
    pub fn new(b: Vec<f64>, norm_kind: NormKind) -> Result<Self> {
        match b.last() {
            None => return Err(Error::InvalidCoefficients("no coefficients".into())),
            Some(&lead) if lead <= 0.0 || !lead.is_finite() => {
                return Err(Error::InvalidCoefficients(format!(
                    "leading coefficient must be positive, got {lead}"
                )))
            }
            _ => {}
        }
        if let Some(bad) = b.iter().find(|x| **x < 0.0 || !x.is_finite()) {
            return Err(Error::InvalidCoefficients(format!(
                "coefficients must be finite and nonnegative, got {bad}"
            )));
        }
        Ok(ScalarBoundPoly { b, norm_kind })
    }

    /// Builds the equation for `p` under `kind`. Monic polynomials use
    /// `b_n = 1` exactly.
    pub fn from_poly(p: &MatrixPoly, kind: NormKind) -> Result<Self> {
        let n = p.degree();
        let lead = if p.is_monic() {
            1.0
        } else {
            1.0 / p.leading().inverse_checked()?.norm(kind)
        };
        let mut b: Vec<f64> = p.coeffs()[..n].iter().map(|c| c.norm(kind)).collect();
        b.push(lead);
        Self::new(b, kind)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.b
    }

    pub fn degree(&self) -> usize {
        self.b.len() - 1
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm_kind
    }

    /// `f(z) = b_n zⁿ − Σ_{j<n} b_j z^j`.
    pub fn eval(&self, z: f64) -> f64 {
        let n = self.degree();
        let mut acc = self.b[n];
        for &bj in self.b[..n].iter().rev() {
            acc = acc * z - bj;
        }
        acc
    }

    /// `g(t) = ln Σ_{j<n} (b_j / b_n) e^{−(n−j) t}` and `g'(t)`, restricted
    /// to the nonzero `b_j`. The radius is `e^t` at the root of `g`.
    fn log_sum(&self, t: f64) -> (f64, f64) {
        let n = self.degree();
        let lead = self.b[n];
        let terms = self.b[..n]
            .iter()
            .enumerate()
            .filter(|(_, &bj)| bj > 0.0)
            .map(|(j, &bj)| ((bj / lead).ln() - (n - j) as f64 * t, (n - j) as f64));
        let top = terms
            .clone()
            .map(|(e, _)| e)
            .fold(f64::NEG_INFINITY, f64::max);
        let (mut sum, mut weighted) = (0.0, 0.0);
        for (e, power) in terms {
            let w = (e - top).exp();
            sum += w;
            weighted += power * w;
        }
        (top + sum.ln(), -weighted / sum)
    }
}

/// Unique positive root of the Cauchy equation. Returns `0` when every `b_j`
/// (`j < n`) is zero.
///
/// Works in `t = ln z`, where the equation becomes `g(t) = 0` with `g` convex
/// and decreasing. With `M = max_j (b_j / b_n)^{1/(n−j)}` the root lies in
/// `[M, 2M]`, so Newton started at `ln M` (where `g ≥ 0`) climbs monotonically
/// to the root; a bisection step guards against rounding leaving the bracket.
pub fn solve_cauchy_scalar(sp: &ScalarBoundPoly) -> f64 {
    let n = sp.degree();
    let b = sp.coefficients();
    let lead = b[n];
    let mut lo = f64::NEG_INFINITY;
    for (j, &bj) in b[..n].iter().enumerate() {
        if bj > 0.0 {
            lo = lo.max((bj / lead).ln() / (n - j) as f64);
        }
    }
    if lo == f64::NEG_INFINITY {
        return 0.0;
    }

    let mut hi = lo + std::f64::consts::LN_2;
    let mut t = lo;
    for _ in 0..MAX_ITER {
        let (g, dg) = sp.log_sum(t);
        if g == 0.0 {
            break;
        }
        if g > 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
        let newton = t - g / dg;
        let next = if newton.is_finite() && newton >= lo && newton <= hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let done = (next - t).abs() <= STEP_TOL * next.abs().max(1.0) || hi - lo <= STEP_TOL;
        t = next;
        if done {
            break;
        }
    }
    t.exp()
}

/// Cauchy radius of `p`: every finite eigenvalue satisfies `|λ| ≤ r`.
pub fn cauchy_radius_value(p: &MatrixPoly, kind: NormKind) -> Result<f64> {
    Ok(solve_cauchy_scalar(&ScalarBoundPoly::from_poly(p, kind)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(b: &[f64]) -> f64 {
        solve_cauchy_scalar(&ScalarBoundPoly::new(b.to_vec(), NormKind::One).unwrap())
    }

    #[test]
    fn quadratic_with_integer_root() {
        // z² − 3z − 4 = (z − 4)(z + 1)
        assert!((solve(&[4.0, 3.0, 1.0]) - 4.0).abs() < 1e-12 * 4.0);
    }

    #[test]
    fn linear_root_is_constant() {
        for c in [0.5, 1.0, 7.25, 1e6] {
            assert!((solve(&[c, 1.0]) - c).abs() <= 1e-12 * c);
        }
    }

    #[test]
    fn monomial_gives_zero() {
        assert_eq!(solve(&[0.0, 0.0, 0.0, 1.0]), 0.0);
    }

    #[test]
    fn gapped_coefficients() {
        // z² − 2 = 0
        let r = solve(&[2.0, 0.0, 1.0]);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        // z³ − z = 0 has positive root 1 with b_0 = 0
        assert!((solve(&[0.0, 1.0, 0.0, 1.0]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn enhanced_quadratic_keeps_root() {
        // (z + 3)(z² − 3z − 4) = z³ − 13z − 12 = (z − 4)(z + 1)(z + 3)
        let r = solve(&[12.0, 13.0, 0.0, 1.0]);
        assert!((r - 4.0).abs() < 1e-12 * 4.0);
    }

    #[test]
    fn rejects_invalid_coefficients() {
        assert!(ScalarBoundPoly::new(vec![1.0, 0.0], NormKind::One).is_err());
        assert!(ScalarBoundPoly::new(vec![-1.0, 1.0], NormKind::One).is_err());
        assert!(ScalarBoundPoly::new(vec![f64::NAN, 1.0], NormKind::One).is_err());
        assert!(ScalarBoundPoly::new(vec![], NormKind::One).is_err());
    }

    #[test]
    fn high_degree_large_root_does_not_overflow() {
        let mut b = vec![0.0; 300];
        b[0] = 1e20;
        b.push(1.0);
        let r = solve(&b);
        let expected = 1e20f64.powf(1.0 / 300.0);
        assert!((r - expected).abs() < 1e-12 * expected, "{r} vs {expected}");
    }
}
