use thiserror::Error;

/// Errors raised while building or analysing an input-output system.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrices and vectors must have at least one entry")]
    Empty,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("singular matrix: pivot magnitude {pivot:e} in column {col} is below {threshold:e}")]
    Singular {
        col: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("negative entry {value} in {what} at ({row}, {col})")]
    Negative {
        what: &'static str,
        row: usize,
        col: usize,
        value: f64,
    },

    #[error("{what} of sector {index} ({name}) is {value}; it must be positive")]
    NonPositiveOutput {
        what: &'static str,
        index: usize,
        name: String,
        value: f64,
    },

    #[error("system is not viable: spectral radius of A is {0:.6} (must be below 1)")]
    NotViable(f64),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("series did not converge within {terms} terms (residual {residual:e})")]
    NoConvergence { terms: usize, residual: f64 },

    #[error("series oracle disagrees with the closed form: {0}")]
    OracleMismatch(String),

    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),

    #[error("fixture '{fixture}' has no published {what} matrix")]
    MissingPublished { fixture: String, what: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
