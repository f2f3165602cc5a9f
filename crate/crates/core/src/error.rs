use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported group `{0}`")]
    UnsupportedGroup(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("outside the domain: {0}")]
    OutOfDomain(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    BadIndex { index: usize, dim: usize },
    #[error("quadrature did not converge: refinement difference {difference:.3e} exceeds {tolerance:.3e}")]
    Quadrature { difference: f64, tolerance: f64 },
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    #[error("unknown cocycle `{0}`")]
    UnknownCocycle(String),
    #[error("singular value: {0}")]
    SingularValue(String),
    #[error("partial sums not Cauchy: difference {difference:.3e} exceeds {tolerance:.3e}")]
    NonConvergent { difference: f64, tolerance: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
