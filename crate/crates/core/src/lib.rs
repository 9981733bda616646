//! Upper and lower bounds on the eigenvalue moduli of square complex matrix
//! polynomials.
//!
//! A polynomial `P(z) = A_0 + A_1 z + ... + A_n zⁿ` is first rewritten as an
//! ℓ-ification of lower degree and larger coefficients ([`lify`]); its Cauchy
//! radius ([`cauchy_radius`]) bounds every eigenvalue, and enhancement
//! ([`enhance`], [`bound`]) tightens that radius step by step. The [`oracle`]
//! module computes spectra directly for validation, and [`bench`] reproduces
//! the random-class experiments.
//!
//! ```
//! use polybound::{bound, BoundOptions, MatrixPoly};
//!
//! // z² − 3z − 4 = (z − 4)(z + 1)
//! let p = MatrixPoly::from_scalars(&[-4.0, -3.0, 1.0]).unwrap();
//! let report = bound(&p, &BoundOptions::default()).unwrap();
//! assert!((report.upper() - 4.0).abs() < 1e-12);
//! ```

pub mod bench;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod lification;
pub mod matpoly;
pub mod matrix;
pub mod oracle;

pub use bench::{
    emit_table, generate_sample, run_experiment, BenchConfig, BenchTable, ClassId, TableFormat,
};
pub use bounds::{
    bound, cauchy_radius, cost_estimate, enhance, enhancement_chain, lower_bound, parse_sides,
    solve_cauchy_scalar, BoundOptions, BoundReport, BoundStep, ScalarBoundPoly, Side,
};
pub use error::{Error, Result};
pub use lification::{frobenius_companion, lify, Lification};
pub use matpoly::{MatrixPoly, MonicSide};
pub use matrix::{ComplexMatrix, NormKind};
pub use oracle::{eigenvalues, validate_bounds, Spectrum, Validation};
