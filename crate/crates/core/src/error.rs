use thiserror::Error;

/// Errors raised by the operator library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("length mismatch: expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("aliasing guard violated: {fraction:.3e} of the {domain} mass would leave the representable range")]
    AliasingGuard { domain: GuardDomain, fraction: f64 },

    #[error("output truncation too small: need K' >= {required}, got {given}")]
    TruncationOverflow { required: usize, given: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("internal check failed: {0}")]
    Internal(String),

    #[error("malformed file: {0}")]
    Format(String),
}

/// Which side of the transform an aliasing guard inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardDomain {
    Spectral,
    Spatial,
}

impl std::fmt::Display for GuardDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GuardDomain::Spectral => f.write_str("spectral"),
            GuardDomain::Spatial => f.write_str("spatial"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
