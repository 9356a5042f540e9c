use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not in the subalgebra C<A>: {0}")]
    NotInSubalgebra(String),
    #[error("not in h^1 (monomial must start with y): {0}")]
    NotInH1(String),
    #[error("operand is not of depth one: {0}")]
    NotDepthOne(String),
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("constant term is not invertible: {0}")]
    NonInvertibleConstant(String),
    #[error("substitution series must be built from b only: {0}")]
    BadU(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("identity {id} expects {expected} parameter(s), got {got}")]
    ArityMismatch { id: String, expected: usize, got: usize },
    #[error("input is not convergent (not in the Hhat0 submodule): {0}")]
    NotConvergentInput(String),
    #[error("bound evaluation needs an exact rational square root of q")]
    MissingSqrtQ,
    #[error("expected an odd weight, got {0}")]
    NotOdd(u32),
    #[error("instance involves an index of depth {0} > 2")]
    DepthTooLarge(usize),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
