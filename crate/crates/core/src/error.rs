use thiserror::Error;

/// Hard failures: preconditions that make an operation meaningless.
///
/// Broken *axioms* are not errors; validators return a [`crate::report::Report`]
/// listing violations instead.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),
    #[error("duplicate element: {0}")]
    DuplicateElement(String),
    #[error("invalid object: {0}")]
    InvalidObject(String),
    #[error("not a discrete fibration: {0}")]
    NotAFibration(String),
    #[error("not a discrete double fibration: {0}")]
    NotADdf(String),
    #[error("not over the base: {0}")]
    NotOverBase(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("invalid lax functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid multimodulation: {0}")]
    InvalidMultimodulation(String),
    #[error("invalid internal profunctor: {0}")]
    InvalidProfunctor(String),
    #[error("invalid multicell: {0}")]
    InvalidMulticell(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed value: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved name: {0}")]
    UnresolvedName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
