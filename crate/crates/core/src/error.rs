use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// The variants double as an exit-status taxonomy for the command-line front
/// end: `Input` and `Descriptor` are caller mistakes, the rest are refusals.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value outside an operation's mathematical domain (valuation of zero, even LTE base, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A field or group descriptor violates its invariants or cannot be resolved.
    #[error("descriptor error: {0}")]
    Descriptor(String),
    /// Malformed input data (tables, complexes, documents).
    #[error("input error: {0}")]
    Input(String),
    /// A documented precondition does not hold for otherwise well-formed input.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The requested enumeration exceeds the configured budget.
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
