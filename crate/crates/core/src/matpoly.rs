//! Square complex matrix polynomials `P(z) = Σ A_j z^j` with coefficients in
//! ascending order of degree.
//!
//! The stored degree is nominal: a singular or even zero leading coefficient
//! is kept as-is, and only [`MatrixPoly::make_monic`] inspects it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Which side the inverse leading coefficient is applied from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonicSide {
    /// `A_n^{-1} A_j`
    #[default]
    Pre,
    /// `A_j A_n^{-1}`
    Post,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly {
    m: usize,
    coeffs: Vec<ComplexMatrix>,
}

impl MatrixPoly {
    /// Builds a polynomial from ascending coefficients `[A_0, ..., A_n]`.
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| {
            Error::ShapeMismatch("polynomial needs at least one coefficient".into())
        })?;
        let m = first.dim();
        if m == 0 {
            return Err(Error::ShapeMismatch("block size must be positive".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.dim() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: bad.dim(),
            });
        }
        Ok(MatrixPoly { m, coeffs })
    }

    /// Scalar (`m = 1`) polynomial from real ascending coefficients.
    pub fn from_scalars(coeffs: &[f64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| ComplexMatrix::scalar(Complex64::new(c, 0.0)))
                .collect(),
        )
    }

    /// `I z^degree`, the matrix monomial.
    pub fn monomial(m: usize, degree: usize) -> Self {
        let mut coeffs = vec![ComplexMatrix::zeros(m); degree + 1];
        coeffs[degree] = ComplexMatrix::identity(m);
        MatrixPoly { m, coeffs }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &ComplexMatrix {
        &self.coeffs[j]
    }

    pub fn leading(&self) -> &ComplexMatrix {
        &self.coeffs[self.degree()]
    }

    pub fn into_coeffs(self) -> Vec<ComplexMatrix> {
        self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_identity()
    }

    /// True when every non-leading coefficient is exactly zero.
    pub fn is_monomial(&self) -> bool {
        self.coeffs[..self.degree()]
            .iter()
            .all(ComplexMatrix::is_zero)
    }

    /// Horner evaluation of `P(z)`.
    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let mut acc = self.leading().clone();
        for c in self.coeffs[..self.degree()].iter().rev() {
            acc = &acc.scale(z) + c;
        }
        acc
    }

    /// The reverse polynomial `z^n P(1/z)`.
    pub fn reverse(&self) -> MatrixPoly {
        MatrixPoly {
            m: self.m,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    /// Multiplies every coefficient by `A_n^{-1}` so that the leading
    /// coefficient becomes exactly the identity.
    pub fn make_monic(&self, side: MonicSide) -> Result<MatrixPoly> {
        let n = self.degree();
        if self.is_monic() {
            return Ok(self.clone());
        }
        let inv = self.leading().inverse_checked()?;
        let mut coeffs: Vec<ComplexMatrix> = self.coeffs[..n]
            .iter()
            .map(|c| match side {
                MonicSide::Pre => &inv * c,
                MonicSide::Post => c * &inv,
            })
            .collect();
        coeffs.push(ComplexMatrix::identity(self.m));
        Ok(MatrixPoly { m: self.m, coeffs })
    }

    /// Coefficient convolution `P · Q`; coefficients with out-of-range
    /// indices count as zero.
    pub fn mul(&self, other: &MatrixPoly) -> Result<MatrixPoly> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        let degree = self.degree() + other.degree();
        let mut coeffs = vec![ComplexMatrix::zeros(self.m); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(MatrixPoly { m: self.m, coeffs })
    }

    /// Smallest `i ≥ 1` with `A_{n-i}` not exactly zero.
    pub fn gap_index(&self) -> Result<usize> {
        let n = self.degree();
        (1..=n)
            .find(|&i| !self.coeffs[n - i].is_zero())
            .ok_or(Error::Monomial)
    }

    /// `(s, ν)`: nonzero entries over all coefficients, and the number of
    /// nonzero non-leading coefficients. Zero tests are exact.
    pub fn nnz_stats(&self) -> (usize, usize) {
        let s = self.coeffs.iter().map(ComplexMatrix::nnz).sum();
        let nu = self.coeffs[..self.degree()]
            .iter()
            .filter(|c| !c.is_zero())
            .count();
        (s, nu)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Row-major `[[ [re, im], ... ], ...]` representation of one coefficient.
pub(crate) type WireMatrix = Vec<Vec<[f64; 2]>>;

pub(crate) fn matrix_to_wire(a: &ComplexMatrix) -> WireMatrix {
    a.rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub(crate) fn matrix_from_wire(w: &WireMatrix, m: usize) -> Result<ComplexMatrix> {
    if w.len() != m || w.iter().any(|r| r.len() != m) {
        return Err(Error::Parse(format!("coefficient is not {m}x{m}")));
    }
    let rows: Vec<Vec<Complex64>> = w
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyWire {
    pub m: usize,
    pub degree: usize,
    pub coefficients: Vec<WireMatrix>,
}

impl From<&MatrixPoly> for PolyWire {
    fn from(p: &MatrixPoly) -> Self {
        PolyWire {
            m: p.m,
            degree: p.degree(),
            coefficients: p.coeffs.iter().map(matrix_to_wire).collect(),
        }
    }
}

impl TryFrom<PolyWire> for MatrixPoly {
    type Error = Error;

    fn try_from(w: PolyWire) -> Result<Self> {
        if w.m == 0 {
            return Err(Error::Parse("m must be positive".into()));
        }
        if w.coefficients.len() != w.degree + 1 {
            return Err(Error::Parse(format!(
                "degree {} needs {} coefficients, found {}",
                w.degree,
                w.degree + 1,
                w.coefficients.len()
            )));
        }
        let coeffs = w
            .coefficients
            .iter()
            .map(|c| matrix_from_wire(c, w.m))
            .collect::<Result<Vec<_>>>()?;
        MatrixPoly::new(coeffs)
    }
}

impl Serialize for MatrixPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = PolyWire::deserialize(d)?;
        MatrixPoly::try_from(wire).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn scalar_coeffs(p: &MatrixPoly) -> Vec<Complex64> {
        p.coeffs().iter().map(|c| c.get(0, 0)).collect()
    }

    #[test]
    fn evaluate_at_zero_is_constant_term() {
        let a0 = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let p = MatrixPoly::new(vec![a0.clone(), ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(p.evaluate(re(0.0)), a0);
    }

    #[test]
    fn evaluate_at_root() {
        let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
        assert_eq!(p.evaluate(re(4.0)).get(0, 0), re(0.0));
    }

    #[test]
    fn evaluate_linear_at_one() {
        let a0 = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let p = MatrixPoly::new(vec![a0.clone(), ComplexMatrix::identity(2)]).unwrap();
        assert_eq!(p.evaluate(re(1.0)), &ComplexMatrix::identity(2) + &a0);
    }

    #[test]
    fn reverse_of_scalar_quadratic() {
        let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
        let r = p.reverse();
        assert_eq!(scalar_coeffs(&r), vec![re(1.0), re(-3.0), re(-4.0)]);
        // roots of 1 - 3z - 4z² are -1 and 1/4
        assert_eq!(r.evaluate(re(-1.0)).get(0, 0), re(0.0));
        assert_eq!(r.evaluate(re(0.25)).get(0, 0), re(0.0));
        assert_eq!(r.reverse(), p);
    }

    #[test]
    fn make_monic_scalar() {
        let p = MatrixPoly::from_scalars(&[4.0, 6.0, 2.0]).unwrap();
        let q = p.make_monic(MonicSide::Pre).unwrap();
        assert_eq!(scalar_coeffs(&q), vec![re(2.0), re(3.0), re(1.0)]);
        assert!(q.is_monic());
    }

    #[test]
    fn make_monic_leaves_monic_unchanged() {
        let p = MatrixPoly::from_scalars(&[4.0, 6.0, 1.0]).unwrap();
        assert_eq!(p.make_monic(MonicSide::Post).unwrap(), p);
    }

    #[test]
    fn make_monic_rejects_singular_leading() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let p = MatrixPoly::new(vec![ComplexMatrix::identity(2), a]).unwrap();
        assert!(matches!(
            p.make_monic(MonicSide::Pre),
            Err(Error::SingularLeading { .. })
        ));
    }

    #[test]
    fn mul_expands_linear_factors() {
        let a = MatrixPoly::from_scalars(&[-4.0, 1.0]).unwrap();
        let b = MatrixPoly::from_scalars(&[1.0, 1.0]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(scalar_coeffs(&p), vec![re(-4.0), re(-3.0), re(1.0)]);
    }

    #[test]
    fn mul_by_identity_is_identity_map() {
        let a0 = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let p = MatrixPoly::new(vec![a0, ComplexMatrix::identity(2)]).unwrap();
        let one = MatrixPoly::monomial(2, 0);
        assert_eq!(one.mul(&p).unwrap(), p);
        assert_eq!(p.mul(&one).unwrap(), p);
    }

    #[test]
    fn mul_dimension_mismatch() {
        let p = MatrixPoly::monomial(2, 1);
        let q = MatrixPoly::monomial(3, 1);
        assert!(matches!(p.mul(&q), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gap_index_cases() {
        let dense = MatrixPoly::from_scalars(&[1.0, 2.0, 3.0, 1.0]).unwrap();
        assert_eq!(dense.gap_index().unwrap(), 1);
        let sparse = MatrixPoly::from_scalars(&[5.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(sparse.gap_index().unwrap(), 3);
        let mono = MatrixPoly::monomial(2, 3);
        assert!(matches!(mono.gap_index(), Err(Error::Monomial)));
    }

    #[test]
    fn nnz_stats_cases() {
        let zero = MatrixPoly::new(vec![ComplexMatrix::zeros(2); 3]).unwrap();
        assert_eq!(zero.nnz_stats(), (0, 0));
        let cubic = MatrixPoly::from_scalars(&[1.0, 2.0, 3.0, 1.0]).unwrap();
        assert_eq!(cubic.nnz_stats(), (4, 3));
    }

    #[test]
    fn new_rejects_mixed_sizes() {
        let r = MatrixPoly::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
        assert!(MatrixPoly::new(vec![]).is_err());
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let p = MatrixPoly::new(vec![
            ComplexMatrix::from_rows(&[
                vec![Complex64::new(1.0, -2.0), re(0.5)],
                vec![re(0.0), Complex64::new(0.0, 3.0)],
            ])
            .unwrap(),
            ComplexMatrix::identity(2),
        ])
        .unwrap();
        let text = p.to_json().unwrap();
        assert_eq!(MatrixPoly::from_json(&text).unwrap(), p);

        let short = r#"{"m": 1, "degree": 2, "coefficients": [[[[1.0, 0.0]]], [[[1.0, 0.0]]]]}"#;
        assert!(MatrixPoly::from_json(short).is_err());
        let wrong_m = r#"{"m": 2, "degree": 0, "coefficients": [[[[1.0, 0.0]]]]}"#;
        assert!(MatrixPoly::from_json(wrong_m).is_err());
    }
}
