//! Cauchy radii of matrix polynomials and their enhancement.
//!
//! The Cauchy radius of `P(z) = Σ A_j z^j` (with `A_n` nonsingular) is the
//! unique positive root `r` of
//!
//! ```text
//! ‖A_n^{-1}‖^{-1} zⁿ − ‖A_{n−1}‖ z^{n−1} − ... − ‖A_0‖ = 0
//! ```
//!
//! and every eigenvalue satisfies `|λ| ≤ r`. For a monic `P` with gap index
//! `i`, the products `(I z^i − A_{n−i}) P` (left) and `P (I z^i − A_{n−i})`
//! (right) have Cauchy radii that are never larger, so repeated enhancement
//! yields a nonincreasing ladder of upper bounds. Applying the same machinery
//! to the reverse polynomial gives lower bounds.

mod cost;
mod scalar;

use serde::{Deserialize, Serialize};

pub use cost::{cost_estimate, enhancement_work, CostContext};
pub use scalar::{cauchy_radius_value, solve_cauchy_scalar, ScalarBoundPoly};

use crate::error::{Error, Result};
use crate::lification::lify;
use crate::matpoly::{MatrixPoly, MonicSide};
use crate::matrix::{ComplexMatrix, NormKind};

/// Multiplication side for an enhancement step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "L",
            Side::Right => "R",
        }
    }
}

/// Expands a schedule pattern into `steps` sides. `pattern` is a string of
/// `L`/`R` characters, cycled as needed, or the word `alternating`.
pub fn parse_sides(pattern: &str, steps: usize) -> Result<Vec<Side>> {
    let pattern = pattern.trim();
    let base: Vec<Side> = if pattern.eq_ignore_ascii_case("alternating") {
        vec![Side::Left, Side::Right]
    } else {
        pattern
            .chars()
            .filter(|c| !matches!(c, ',' | '.' | ' '))
            .map(|c| match c.to_ascii_uppercase() {
                'L' => Ok(Side::Left),
                'R' => Ok(Side::Right),
                other => Err(Error::Parse(format!("unknown side '{other}'"))),
            })
            .collect::<Result<_>>()?
    };
    if base.is_empty() {
        return Err(Error::Parse("empty side schedule".into()));
    }
    Ok(base.iter().cycle().take(steps).copied().collect())
}

/// One rung of the radius ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundStep {
    pub radius: f64,
    #[serde(rename = "degree")]
    pub equation_degree: usize,
    #[serde(with = "side_or_none")]
    pub side: Option<Side>,
    /// Gap index of the polynomial that was multiplied to reach this step.
    #[serde(skip)]
    pub gap: Option<usize>,
    /// Cumulative normalized multiplication work; zero for the plain radius.
    pub cost: f64,
    pub s: usize,
    pub nu: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(rename = "norm")]
    pub norm_kind: NormKind,
    #[serde(rename = "k")]
    pub k_used: usize,
    pub lower: Option<f64>,
    pub steps: Vec<BoundStep>,
}

impl BoundReport {
    /// The last (tightest) upper bound.
    pub fn upper(&self) -> f64 {
        self.steps.last().map_or(f64::INFINITY, |s| s.radius)
    }

    pub fn radii(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.radius).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

mod side_or_none {
    use super::Side;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(side: &Option<Side>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(side.map_or("none", Side::as_str))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Side>, D::Error> {
        match String::deserialize(d)?.as_str() {
            "L" => Ok(Some(Side::Left)),
            "R" => Ok(Some(Side::Right)),
            "none" => Ok(None),
            other => Err(serde::de::Error::custom(format!("unknown side '{other}'"))),
        }
    }
}

/// Plain Cauchy radius of `p` as a step-0 record.
pub fn cauchy_radius(p: &MatrixPoly, kind: NormKind) -> Result<BoundStep> {
    let sp = ScalarBoundPoly::from_poly(p, kind)?;
    let (s, nu) = p.nnz_stats();
    Ok(BoundStep {
        radius: solve_cauchy_scalar(&sp),
        equation_degree: sp.degree(),
        side: None,
        gap: None,
        cost: 0.0,
        s,
        nu,
    })
}

/// Multiplies the monic `p` by `I z^i − A_{n−i}` on the given side, where `i`
/// is the gap index. The coefficients of degrees `n .. n+i−1` cancel and are
/// stored as exact zeros.
pub fn enhance(p: &MatrixPoly, side: Side) -> Result<MatrixPoly> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let i = p.gap_index()?;
    let n = p.degree();
    let m = p.m();
    let factor = p.coeff(n - i);
    let mut coeffs = vec![ComplexMatrix::zeros(m); n + i + 1];
    for (j, a) in p.coeffs()[..n].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let product = match side {
            Side::Left => factor * a,
            Side::Right => a * factor,
        };
        coeffs[j] = &coeffs[j] - &product;
        coeffs[j + i] = &coeffs[j + i] + a;
    }
    for c in &mut coeffs[n..n + i] {
        *c = ComplexMatrix::zeros(m);
    }
    coeffs[n + i] = ComplexMatrix::identity(m);
    MatrixPoly::new(coeffs)
}

/// Step 0 is the Cauchy radius of (the monic form of) `p`; step `t` applies
/// `sides[t − 1]`. Costs are normalized to one enhancement of `p` itself.
pub fn enhancement_chain(p: &MatrixPoly, kind: NormKind, sides: &[Side]) -> Result<BoundReport> {
    let monic = p.make_monic(MonicSide::Pre)?;
    let ctx = if sides.is_empty() {
        None
    } else {
        Some(CostContext::new(&monic, 1)?)
    };
    chain_monic(monic, kind, sides, ctx, 1)
}

fn chain_monic(
    monic: MatrixPoly,
    kind: NormKind,
    sides: &[Side],
    ctx: Option<CostContext>,
    k_used: usize,
) -> Result<BoundReport> {
    let mut steps = vec![cauchy_radius(&monic, kind)?];
    let mut current = monic;
    let mut work = 0.0;
    for &side in sides {
        if let Some(ctx) = &ctx {
            work += ctx.normalized_work(&current)?;
        }
        let gap = current.gap_index()?;
        current = enhance(&current, side)?;
        let mut step = cauchy_radius(&current, kind)?;
        step.side = Some(side);
        step.gap = Some(gap);
        step.cost = work;
        steps.push(step);
    }
    Ok(BoundReport {
        norm_kind: kind,
        k_used,
        lower: None,
        steps,
    })
}

/// Lower bound on the eigenvalue moduli from the enhanced Cauchy radius of
/// the reverse polynomial. Returns `0` when `A_0` is singular (zero is an
/// eigenvalue) and `+∞` when the polynomial has no finite eigenvalues.
pub fn lower_bound(p: &MatrixPoly, kind: NormKind, sides: &[Side]) -> Result<f64> {
    let rev = match p.reverse().make_monic(MonicSide::Pre) {
        Ok(rev) => rev,
        Err(Error::SingularLeading { .. }) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    if rev.is_monomial() {
        return Ok(f64::INFINITY);
    }
    let report = chain_monic(rev, kind, sides, None, 1)?;
    let r = report.upper();
    Ok(if r == 0.0 { f64::INFINITY } else { 1.0 / r })
}

/// Options for the full bounding pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundOptions {
    pub k: usize,
    pub norm: NormKind,
    pub sides: Vec<Side>,
    pub lower: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            k: 1,
            norm: NormKind::One,
            sides: Vec::new(),
            lower: false,
        }
    }
}

/// Monicizes `p`, builds its ℓ-ification with parameter `k` and runs the
/// enhancement ladder on it; optionally adds the reverse-polynomial lower
/// bound computed on the same ℓ-ification.
pub fn bound(p: &MatrixPoly, opts: &BoundOptions) -> Result<BoundReport> {
    let monic = p.make_monic(MonicSide::Pre)?;
    let lified = lify(&monic, opts.k)?;
    let ctx = if opts.sides.is_empty() {
        None
    } else {
        Some(CostContext::new(&monic, opts.k)?)
    };
    let mut report = chain_monic(lified.poly().clone(), opts.norm, &opts.sides, ctx, opts.k)?;
    if opts.lower {
        let lower_input = lify(p, opts.k)?.into_poly();
        report.lower = Some(lower_bound(&lower_input, opts.norm, &opts.sides)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn mat(rows: &[Vec<f64>]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(rows).unwrap()
    }

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn linear_radius_is_norm_of_constant() {
        let a0 = mat(&[vec![1.0, -2.0], vec![0.5, 3.0]]);
        let p = MatrixPoly::new(vec![a0.clone(), ComplexMatrix::identity(2)]).unwrap();
        for kind in NormKind::ALL {
            let step = cauchy_radius(&p, kind).unwrap();
            assert!(rel_eq(step.radius, a0.norm(kind), 1e-12));
            assert_eq!(step.equation_degree, 1);
        }
    }

    #[test]
    fn monomial_radius_is_zero() {
        let p = MatrixPoly::monomial(3, 4);
        assert_eq!(cauchy_radius(&p, NormKind::One).unwrap().radius, 0.0);
    }

    #[test]
    fn scalar_quadratic_is_tight() {
        let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
        assert!(rel_eq(
            cauchy_radius(&p, NormKind::One).unwrap().radius,
            4.0,
            1e-12
        ));
    }

    #[test]
    fn non_monic_uses_inverse_leading_norm() {
        // 2z − 6 has root 3; b = [6, 1 / ‖1/2‖] = [6, 2]
        let p = MatrixPoly::from_scalars(&[-6.0, 2.0]).unwrap();
        assert!(rel_eq(
            cauchy_radius(&p, NormKind::One).unwrap().radius,
            3.0,
            1e-12
        ));
        let singular =
            MatrixPoly::new(vec![ComplexMatrix::identity(2), ComplexMatrix::zeros(2)]).unwrap();
        assert!(matches!(
            cauchy_radius(&singular, NormKind::One),
            Err(Error::SingularLeading { .. })
        ));
    }

    #[test]
    fn enhance_linearization_squares_constant() {
        let c0 = mat(&[vec![1.0, 2.0], vec![-3.0, 0.5]]);
        let p = MatrixPoly::new(vec![c0.clone(), ComplexMatrix::identity(2)]).unwrap();
        let t = enhance(&p, Side::Left).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(*t.coeff(0), -&(&c0 * &c0));
        assert!(t.coeff(1).is_zero());
        assert!(t.coeff(2).is_identity());
        let r = cauchy_radius(&t, NormKind::One).unwrap().radius;
        assert!(rel_eq(r, (&c0 * &c0).norm(NormKind::One).sqrt(), 1e-12));
    }

    fn cubic() -> (MatrixPoly, [ComplexMatrix; 3]) {
        let c0 = mat(&[vec![1.0, 2.0], vec![-1.0, 0.0]]);
        let c1 = mat(&[vec![0.5, -1.5], vec![2.0, 1.0]]);
        let c2 = mat(&[vec![-2.0, 1.0], vec![0.25, 3.0]]);
        let p = MatrixPoly::new(vec![
            c0.clone(),
            c1.clone(),
            c2.clone(),
            ComplexMatrix::identity(2),
        ])
        .unwrap();
        (p, [c0, c1, c2])
    }

    #[test]
    fn enhance_cubic_left() {
        let (p, [c0, c1, c2]) = cubic();
        let t = enhance(&p, Side::Left).unwrap();
        assert_eq!(t.degree(), 4);
        assert!(t.coeff(4).is_identity());
        assert!(t.coeff(3).is_zero());
        assert_eq!(*t.coeff(2), &c1 - &(&c2 * &c2));
        assert_eq!(*t.coeff(1), &c0 - &(&c2 * &c1));
        assert_eq!(*t.coeff(0), -&(&c2 * &c0));
        assert_eq!(t.gap_index().unwrap(), 2);
    }

    #[test]
    fn enhance_cubic_right() {
        let (p, [c0, c1, c2]) = cubic();
        let t = enhance(&p, Side::Right).unwrap();
        assert_eq!(*t.coeff(2), &c1 - &(&c2 * &c2));
        assert_eq!(*t.coeff(1), &c0 - &(&c1 * &c2));
        assert_eq!(*t.coeff(0), -&(&c0 * &c2));
    }

    #[test]
    fn enhance_matches_explicit_product() {
        let (p, [_, _, c2]) = cubic();
        let factor = MatrixPoly::new(vec![-&c2, ComplexMatrix::identity(2)]).unwrap();
        let left = factor.mul(&p).unwrap();
        let t = enhance(&p, Side::Left).unwrap();
        for j in 0..=4 {
            let diff = (t.coeff(j) - left.coeff(j)).norm(NormKind::One);
            assert!(diff < 1e-14);
        }
    }

    #[test]
    fn enhance_preconditions() {
        let p = MatrixPoly::from_scalars(&[1.0, 2.0]).unwrap();
        assert!(matches!(enhance(&p, Side::Left), Err(Error::NotMonic)));
        let mono = MatrixPoly::monomial(2, 2);
        assert!(matches!(enhance(&mono, Side::Right), Err(Error::Monomial)));
    }

    #[test]
    fn enhance_uses_gap_index() {
        // z³ + 0 z² + 0 z − 8 : i = 3, factor z³ + 8
        let p = MatrixPoly::from_scalars(&[-8.0, 0.0, 0.0, 1.0]).unwrap();
        let t = enhance(&p, Side::Left).unwrap();
        let c: Vec<Complex64> = t.coeffs().iter().map(|c| c.get(0, 0)).collect();
        assert_eq!(
            c,
            vec![
                re(-64.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(0.0),
                re(1.0)
            ]
        );
    }

    #[test]
    fn chain_on_tight_quadratic_stays_put() {
        let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
        let report = enhancement_chain(&p, NormKind::One, &[Side::Left]).unwrap();
        assert_eq!(report.steps.len(), 2);
        assert!(rel_eq(report.steps[0].radius, 4.0, 1e-12));
        assert!(rel_eq(report.steps[1].radius, 4.0, 1e-12));
        assert_eq!(report.steps[1].equation_degree, 3);
        assert_eq!(report.steps[1].gap, Some(1));
        assert_eq!(report.steps[1].cost, 1.0);
    }

    #[test]
    fn empty_schedule_is_plain_radius() {
        let (p, _) = cubic();
        let report = enhancement_chain(&p, NormKind::Infinity, &[]).unwrap();
        assert_eq!(report.steps.len(), 1);
        assert_eq!(
            report.steps[0],
            cauchy_radius(&p, NormKind::Infinity).unwrap()
        );
    }

    #[test]
    fn lower_bound_scalar_quadratic() {
        let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
        let lb = lower_bound(&p, NormKind::One, &[]).unwrap();
        assert!(rel_eq(lb, 1.0, 1e-12));
    }

    #[test]
    fn lower_bound_linear() {
        let a0 = mat(&[vec![2.0, 1.0], vec![0.0, 4.0]]);
        let p = MatrixPoly::new(vec![a0.clone(), ComplexMatrix::identity(2)]).unwrap();
        let inv = a0.inverse_checked().unwrap();
        for kind in NormKind::ALL {
            let lb = lower_bound(&p, kind, &[]).unwrap();
            assert!(rel_eq(lb, 1.0 / inv.norm(kind), 1e-12));
        }
    }

    #[test]
    fn lower_bound_singular_constant() {
        let a0 = mat(&[vec![1.0, 1.0], vec![1.0, 1.0]]);
        let p = MatrixPoly::new(vec![a0, ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(lower_bound(&p, NormKind::One, &[Side::Left]).unwrap(), 0.0);
    }

    #[test]
    fn parse_side_schedules() {
        assert_eq!(parse_sides("L", 3).unwrap(), vec![Side::Left; 3]);
        assert_eq!(
            parse_sides("alternating", 3).unwrap(),
            vec![Side::Left, Side::Right, Side::Left]
        );
        assert_eq!(parse_sides("RL", 1).unwrap(), vec![Side::Right]);
        assert!(parse_sides("LX", 2).is_err());
        assert!(parse_sides("", 2).is_err());
    }

    #[test]
    fn report_json_schema() {
        let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
        let report = bound(
            &p,
            &BoundOptions {
                sides: vec![Side::Left],
                lower: true,
                ..Default::default()
            },
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
        assert_eq!(v["norm"], "one");
        assert_eq!(v["k"], 1);
        assert!(v["lower"].is_number());
        assert_eq!(v["steps"][0]["side"], "none");
        assert_eq!(v["steps"][1]["side"], "L");
        assert_eq!(v["steps"][1]["degree"], 3);
        for key in ["radius", "cost", "s", "nu"] {
            assert!(!v["steps"][0][key].is_null(), "{key}");
        }
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.radii(), report.radii());
    }
}
