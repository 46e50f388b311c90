use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tuning parameter (λ, window, step, ...) is invalid.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The curve is sampled too coarsely for the requested estimate.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// The reach is realized by curvature only; no bottleneck pair exists.
    #[error("reach is focal only: no genuine double-normal pair")]
    FocalOnly,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
