//! Crate-wide error type.

/// Errors surfaced by estimators, environments and the solver.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument violated a precondition (non-finite input, empty
    /// decision set, non-positive scale parameter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical operation degenerated (non-SPD matrix, non-finite
    /// gradient, ...).
    #[error("numerical degeneracy: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
