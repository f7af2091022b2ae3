//! Error type shared across the crate.
//!
//! Two categories matter to callers: malformed input (bad problem data,
//! violated preconditions) and exhausted resource caps (the Buchberger work
//! cap, the stable-saturation cap).  The CLI maps them to distinct exit
//! codes, so they are kept apart here rather than collapsed into one string.

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input data is malformed or violates a documented precondition.
    Input(String),
    /// A configured work cap was exhausted before the computation finished.
    Resource(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "input error: {msg}"),
            Error::Resource(msg) => write!(f, "resource limit exceeded: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
