use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed literal: {0}")]
    MalformedLiteral(String),
    #[error("literal is not in lowest form: {0}")]
    NotLowestForm(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("strip [a+2^-k, b-2^-k] is empty")]
    EmptyStrip,
    #[error("oracle answers are inconsistent with x >= a")]
    InconsistentOracles,
    #[error("approximator rejected its argument: {0}")]
    DomainViolation(String),
    #[error("grid of 2^{0} points exceeds the enumeration limit")]
    GridTooLarge(u64),
    #[error("value does not fit the representation: {0}")]
    Overflow(String),
    #[error("unknown identifier: {0}")]
    UnknownId(String),
}

pub type Result<T> = core::result::Result<T, Error>;
