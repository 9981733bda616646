use thiserror::Error;

/// Errors raised by polynomial construction, bounding and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("leading coefficient is numerically singular (condition estimate {cond:.3e}); upper bounds are undefined")]
    SingularLeading { cond: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomial is a matrix monomial: every non-leading coefficient is zero")]
    Monomial,

    #[error("k = {k} does not divide the degree {degree}")]
    NotDivisor { k: usize, degree: usize },

    #[error("polynomial is not monic: leading coefficient is not the identity")]
    NotMonic,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid scalar bound coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("eigenvalue computation did not converge")]
    EigenFailure,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
