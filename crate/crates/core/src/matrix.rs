//! Dense square complex matrices and the subordinate norms used for Cauchy radii.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Condition-number ceiling beyond which a matrix is treated as singular.
pub const SINGULARITY_COND_LIMIT: f64 = 1e12;

const POWER_ITER_TOL: f64 = 1e-10;
const POWER_ITER_MAX: usize = 1000;

/// Matrix norm selector. Every variant satisfies `‖I‖ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// Maximum absolute column sum.
    #[default]
    One,
    /// Maximum absolute row sum.
    #[serde(rename = "inf")]
    Infinity,
    /// Largest singular value.
    Two,
}

impl NormKind {
    pub const ALL: [NormKind; 3] = [NormKind::One, NormKind::Infinity, NormKind::Two];

    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::One => "one",
            NormKind::Infinity => "inf",
            NormKind::Two => "two",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "one" | "1" => Ok(NormKind::One),
            "inf" | "infinity" => Ok(NormKind::Infinity),
            "two" | "2" => Ok(NormKind::Two),
            other => Err(Error::Parse(format!("unknown norm '{other}'"))),
        }
    }
}

/// A square `m × m` complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{}", self.0)
    }
}

impl ComplexMatrix {
    pub fn zeros(m: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(m, m))
    }

    pub fn identity(m: usize) -> Self {
        ComplexMatrix(DMatrix::identity(m, m))
    }

    /// Wraps a dense matrix, checking that it is square with finite entries.
    pub fn from_dmatrix(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}, expected square",
                inner.nrows(),
                inner.ncols()
            )));
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix(inner))
    }

    /// Builds a matrix from row-major rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let m = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::ShapeMismatch(format!(
                "row of length {} in a {m}-row matrix",
                bad.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_fn(m, m, |i, j| rows[i][j]))
    }

    /// Builds a real matrix from row-major rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(m: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        ComplexMatrix(DMatrix::from_fn(m, m, f))
    }

    pub fn scalar(z: Complex64) -> Self {
        ComplexMatrix(DMatrix::from_element(1, 1, z))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.0[(i, j)] = value;
    }

    pub fn inner(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Exact zero test on stored values.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Exact identity test on stored values.
    pub fn is_identity(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| {
            (0..m).all(|j| {
                let expect = if i == j { 1.0 } else { 0.0 };
                let z = self.0[(i, j)];
                z.re == expect && z.im == 0.0
            })
        })
    }

    /// Number of entries that are not exactly zero.
    pub fn nnz(&self) -> usize {
        self.0.iter().filter(|z| z.re != 0.0 || z.im != 0.0).count()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix(&self.0 * factor)
    }

    /// Copies `block` into the `m × m` block at block coordinates `(bi, bj)`.
    pub fn set_block(&mut self, bi: usize, bj: usize, block: &ComplexMatrix) {
        let m = block.dim();
        self.0
            .view_mut((bi * m, bj * m), (m, m))
            .copy_from(&block.0);
    }

    pub fn block(&self, bi: usize, bj: usize, m: usize) -> ComplexMatrix {
        ComplexMatrix(self.0.view((bi * m, bj * m), (m, m)).into_owned())
    }

    /// Determinant by partial-pivot LU elimination.
    pub fn det(&self) -> Complex64 {
        if self.dim() == 0 {
            return Complex64::new(1.0, 0.0);
        }
        self.0.clone().lu().determinant()
    }

    /// Inverse by partial-pivot elimination, rejecting matrices whose 1-norm
    /// condition estimate exceeds [`SINGULARITY_COND_LIMIT`].
    pub fn inverse_checked(&self) -> Result<ComplexMatrix> {
        let inv = self
            .0
            .clone()
            .lu()
            .try_inverse()
            .ok_or(Error::SingularLeading {
                cond: f64::INFINITY,
            })?;
        let inv = ComplexMatrix(inv);
        let cond = self.norm(NormKind::One) * inv.norm(NormKind::One);
        if !cond.is_finite() || cond > SINGULARITY_COND_LIMIT {
            return Err(Error::SingularLeading { cond });
        }
        Ok(inv)
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        match kind {
            NormKind::One => self
                .0
                .column_iter()
                .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::Infinity => self
                .0
                .row_iter()
                .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::Two => spectral_norm(&self.0),
        }
    }
}

/// Largest singular value by power iteration on `AᴴA`, falling back to a full
/// singular value decomposition when the iteration stagnates.
fn spectral_norm(a: &DMatrix<Complex64>) -> f64 {
    let m = a.ncols();
    if m == 0 || a.iter().all(|z| z.norm_sqr() == 0.0) {
        return 0.0;
    }
    let gram = a.adjoint() * a;
    let mut v = nalgebra::DVector::from_element(m, Complex64::new(1.0, 0.0));
    v /= Complex64::new(v.norm(), 0.0);
    let mut estimate = 0.0_f64;
    for _ in 0..POWER_ITER_MAX {
        let w = &gram * &v;
        let next = w.norm();
        if next == 0.0 {
            break;
        }
        v = w / Complex64::new(next, 0.0);
        if (next - estimate).abs() <= POWER_ITER_TOL * next {
            return next.sqrt();
        }
        estimate = next;
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}
