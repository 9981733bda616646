//! Block companion forms (ℓ-ifications) of square matrix polynomials.
//!
//! For a degree-`n` polynomial with `m × m` coefficients and a divisor `k` of
//! `n`, [`lify`] builds the degree-`q = n/k` polynomial `Q(z) = Σ C_j z^j`
//! whose `km × km` coefficients are
//!
//! ```text
//! C_0 = [ A_{(k-1)q}  A_{(k-2)q}  ...  A_q  A_0 ]      C_q = diag(A_n, I, ..., I)
//!       [ -I          0                          ]
//!       [             -I   ...                   ]      C_j = [ A_{j+(k-1)q} ... A_{j+q}  A_j ]
//!       [                       -I          0    ]            [ 0                             ]
//! ```
//!
//! `det P(z) = det Q(z)` for every `z`, so `P` and `Q` share their eigenvalues.
//! `k = 1` returns `P` itself and `k = n` gives the linearization `A_n z + C_0`,
//! whose negated constant block is the Frobenius companion matrix when `P` is
//! monic.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matpoly::{matrix_from_wire, matrix_to_wire, MatrixPoly, WireMatrix};
use crate::matrix::ComplexMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Lification {
    poly: MatrixPoly,
    k: usize,
    q: usize,
    source_m: usize,
    source_degree: usize,
}

impl Lification {
    pub fn poly(&self) -> &MatrixPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MatrixPoly {
        self.poly
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn source_m(&self) -> usize {
        self.source_m
    }

    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&LificationWire::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: LificationWire = serde_json::from_str(text)?;
        Lification::try_from(wire)
    }
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// Builds the degree-`n/k` block companion form of `p`.
pub fn lify(p: &MatrixPoly, k: usize) -> Result<Lification> {
    let n = p.degree();
    if k == 0 || n == 0 || k > n || !n.is_multiple_of(k) {
        return Err(Error::NotDivisor { k, degree: n });
    }
    let m = p.m();
    let q = n / k;
    let a = p.coeffs();
    let size = k * m;

    let mut coeffs = Vec::with_capacity(q + 1);
    for j in 0..q {
        let mut c = ComplexMatrix::zeros(size);
        for b in 0..k {
            c.set_block(0, b, &a[j + (k - 1 - b) * q]);
        }
        if j == 0 {
            let minus_i = -&ComplexMatrix::identity(m);
            for b in 1..k {
                c.set_block(b, b - 1, &minus_i);
            }
        }
        coeffs.push(c);
    }
    let mut lead = ComplexMatrix::identity(size);
    lead.set_block(0, 0, &a[n]);
    coeffs.push(lead);

    Ok(Lification {
        poly: MatrixPoly::new(coeffs)?,
        k,
        q,
        source_m: m,
        source_degree: n,
    })
}

/// The `nm × nm` Frobenius companion matrix of a monic polynomial: top block
/// row `[-A_{n-1}, ..., -A_0]` over an identity subdiagonal.
pub fn frobenius_companion(p: &MatrixPoly) -> Result<ComplexMatrix> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if p.degree() == 0 {
        return Err(Error::NotDivisor { k: 0, degree: 0 });
    }
    let l = lify(p, p.degree())?;
    Ok(-l.poly().coeff(0))
}

/// Relative discrepancy between the two sides of the block determinant
/// identity
///
/// ```text
/// det [ M_1  M_2  ...      M_n     ]
///     [ -I   N_1               ]     = det(M_1 N_1 ... N_{n-1} + M_2 N_2 ... N_{n-1} + ... + M_n)
///     [      -I   N_2          ]
///     [           ...  -I  N_{n-1} ]
/// ```
///
/// with products taken from the right in increasing index order.
pub fn block_det_identity_check(ms: &[ComplexMatrix], ns: &[ComplexMatrix]) -> Result<f64> {
    let n = ms.len();
    if n < 3 || ns.len() + 1 != n {
        return Err(Error::ShapeMismatch(format!(
            "need n >= 3 M blocks and n - 1 N blocks, got {} and {}",
            ms.len(),
            ns.len()
        )));
    }
    let m = ms[0].dim();
    if ms.iter().chain(ns).any(|b| b.dim() != m) {
        return Err(Error::ShapeMismatch("blocks differ in size".into()));
    }

    let mut big = ComplexMatrix::zeros(n * m);
    let minus_i = -&ComplexMatrix::identity(m);
    for (b, mb) in ms.iter().enumerate() {
        big.set_block(0, b, mb);
    }
    for (r, nb) in ns.iter().enumerate() {
        big.set_block(r + 1, r, &minus_i);
        big.set_block(r + 1, r + 1, nb);
    }
    let lhs = big.det();

    let mut sum = ComplexMatrix::zeros(m);
    for (i, mi) in ms.iter().enumerate() {
        let mut term = mi.clone();
        for nj in &ns[i..] {
            term = &term * nj;
        }
        sum = &sum + &term;
    }
    let rhs = sum.det();
    Ok(relative_gap(lhs, rhs))
}

/// Largest relative gap between `det P(z)` and `det Q(z)`, and between the
/// determinants of the reversed polynomials, over the sample points.
pub fn det_equivalence_check(p: &MatrixPoly, l: &Lification, zs: &[Complex64]) -> f64 {
    let q = l.poly();
    let (p_rev, q_rev) = (p.reverse(), q.reverse());
    zs.iter()
        .map(|&z| {
            let direct = relative_gap(p.evaluate(z).det(), q.evaluate(z).det());
            let reversed = relative_gap(p_rev.evaluate(z).det(), q_rev.evaluate(z).det());
            direct.max(reversed)
        })
        .fold(0.0, f64::max)
}

fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

#[derive(Serialize, Deserialize)]
struct LificationMeta {
    k: usize,
    q: usize,
    source_m: usize,
}

#[derive(Serialize, Deserialize)]
struct LificationWire {
    m: usize,
    degree: usize,
    coefficients: Vec<WireMatrix>,
    metadata: LificationMeta,
}

impl From<&Lification> for LificationWire {
    fn from(l: &Lification) -> Self {
        LificationWire {
            m: l.poly.m(),
            degree: l.q,
            coefficients: l.poly.coeffs().iter().map(matrix_to_wire).collect(),
            metadata: LificationMeta {
                k: l.k,
                q: l.q,
                source_m: l.source_m,
            },
        }
    }
}

impl TryFrom<LificationWire> for Lification {
    type Error = Error;

    fn try_from(w: LificationWire) -> Result<Self> {
        let meta = &w.metadata;
        if meta.q != w.degree || meta.k * meta.source_m != w.m || meta.k == 0 {
            return Err(Error::Parse("inconsistent lification metadata".into()));
        }
        if w.coefficients.len() != w.degree + 1 {
            return Err(Error::Parse(
                "coefficient count does not match degree".into(),
            ));
        }
        let coeffs = w
            .coefficients
            .iter()
            .map(|c| matrix_from_wire(c, w.m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Lification {
            poly: MatrixPoly::new(coeffs)?,
            k: meta.k,
            q: meta.q,
            source_m: meta.source_m,
            source_degree: meta.k * meta.q,
        })
    }
}
