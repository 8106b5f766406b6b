use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are coarse on purpose: callers (the CLI in particular) map
/// them onto distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A feasibility guard refused to run an enumeration or sweep.
    #[error("resource guard exceeded: {what} ({requested} > limit {limit})")]
    Resource {
        what: String,
        requested: u128,
        limit: u128,
    },

    /// An internal consistency check failed. This always signals a bug or a
    /// disagreement between two independent routes.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Malformed textual input (polynomial strings, cover files).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}

pub(crate) fn guard(what: &str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::Resource {
            what: what.to_string(),
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
