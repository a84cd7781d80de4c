use crate::count::BigCount;

/// Errors raised by channel construction, element parsing, and the
/// enumeration-based algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Parameters or elements outside the domain of a channel.
    #[error("{0}")]
    Domain(String),
    /// An enumeration or search would exceed its configured guard.
    #[error("{what} has {count} elements, exceeding the limit of {limit}")]
    Resource { what: String, count: BigCount, limit: u64 },
    /// Malformed textual input.
    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
