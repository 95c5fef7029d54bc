//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum GeomError {
    /// Input violates a structural invariant (wrong counts, non-convex, ...).
    #[error("invalid body: {0}")]
    InvalidBody(String),

    /// Input is valid in shape but numerically degenerate (near-zero area,
    /// collinear vertices, vanishing determinant).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Argument outside the operation's domain (zero direction vector, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold (origin not interior, body not
    /// centrally symmetric, containment failure, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Bracketing or iteration failure in a numerical solve.
    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// An identity that must hold for valid inputs failed numerically.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
