use std::path::PathBuf;

/// Errors produced by the solver kit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter violates an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A special function was asked for a value it cannot deliver reliably.
    #[error("outside supported domain: {0}")]
    Domain(String),

    /// `lambda` is neither zero nor inside the closed sector `-K(phi0)`.
    #[error("lambda = {lambda} violates the sector condition |arg(-lambda)| <= {phi0}")]
    SectorViolation { lambda: String, phi0: f64 },

    /// A numerical routine failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// A tridiagonal elimination hit a zero or non-finite pivot.
    #[error("singular tridiagonal system (pivot {pivot:e} at row {row})")]
    SingularSystem { row: usize, pivot: f64 },

    /// The requested operation does not apply to this operator.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
