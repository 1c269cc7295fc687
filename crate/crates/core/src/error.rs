use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or quadrature did not reach its tolerance within budget.
    /// `partial` carries the last estimate when one exists.
    #[error("convergence failure: {what} (partial estimate {partial:?})")]
    Convergence { what: String, partial: Option<f64> },

    /// A vector does not fit the truncated Fock space it is applied in.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An object could not be assembled from the given data.
    #[error("construction error: {0}")]
    Construction(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn convergence(what: impl Into<String>, partial: Option<f64>) -> Self {
        Error::Convergence {
            what: what.into(),
            partial,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
