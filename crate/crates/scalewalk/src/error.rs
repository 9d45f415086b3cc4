use thiserror::Error;

/// Library-wide error type.
///
/// `Budget` is distinguished from `Invalid` so that callers (notably the CLI)
/// can tell a structurally bad input apart from one that is merely too large
/// for the configured limits.
#[derive(Debug, Error)]
pub enum Error {
    /// A value was used with a quantale of a different kind, or with a
    /// mismatched ground set.
    #[error("quantale kind mismatch: {0}")]
    KindMismatch(String),

    /// Structurally invalid input: broken invariants, unknown names,
    /// malformed documents.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The operation would exceed a configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
