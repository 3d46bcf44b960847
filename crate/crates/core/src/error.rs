use thiserror::Error;

/// Errors raised by the tree, complex, operad and presentation layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid address {address} for tree {tree}")]
    Address { address: String, tree: String },

    #[error("composition error: {0}")]
    Composition(String),

    /// A structural invariant that must hold by construction was violated.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
