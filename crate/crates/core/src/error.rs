use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An index or point outside the model's index set or spatial domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid potential: {0}")]
    Potential(String),

    /// Structural violations of the truncated model (non-Hermitian coupling, size mismatch).
    #[error("model error: {0}")]
    Model(String),

    #[error("numeric failure at step {step}: {message}")]
    Numeric { step: usize, message: String },

    #[error("quadrature did not converge on [{a}, {b}]: last estimate {last}, previous {previous}")]
    Quadrature {
        a: f64,
        b: f64,
        last: String,
        previous: String,
    },

    /// The symmetrized frequency family is not pairwise distinct, or a zero-frequency target is complex.
    #[error("degenerate moment problem: {0}")]
    Degeneracy(String),

    #[error("Gram matrix condition number {condition:.3e} exceeds cap {cap:.1e}; use a larger horizon or fewer modes")]
    IllConditioned { condition: f64, cap: f64 },

    #[error("Gram matrix is not positive definite (Cholesky failed)")]
    NotPositiveDefinite,

    /// The coupling coefficient of a controlled mode vanishes, so its moment target is undefined.
    #[error("controllability defect: coupling coefficient for mode {k} is {magnitude:.3e}")]
    ControllabilityDefect { k: i64, magnitude: f64 },

    #[error("Newton iteration did not converge: residual history {history:?}")]
    NonConvergence { history: Vec<f64> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
