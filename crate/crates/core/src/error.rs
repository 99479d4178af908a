use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative procedure ran out of budget before meeting its tolerance.
    /// The best available estimate is attached.
    #[error("{what} did not converge: estimate {estimate:e}, error estimate {error_estimate:e}")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        error_estimate: f64,
    },

    /// The series path refused an argument beyond its accuracy window.
    #[error("series path refused argument {argument} (limit {limit})")]
    PathRefused { argument: f64, limit: f64 },

    /// A lattice count would not fit in the integer type.
    #[error("lattice count overflow at radius {0}")]
    Overflow(f64),

    /// Too few data points to fit a model.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A per-shell evaluation failed inside a Hardy-type sum.
    #[error("evaluation failed at shell s = {s}, phi = {phi}: {source}")]
    Evaluation {
        s: f64,
        phi: f64,
        #[source]
        source: Box<Error>,
    },

    /// An internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures caused by an iterative method running out of budget,
    /// including those wrapped with shell context.
    pub fn is_non_convergence(&self) -> bool {
        match self {
            Error::NonConvergence { .. } | Error::PathRefused { .. } => true,
            Error::Evaluation { source, .. } => source.is_non_convergence(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
