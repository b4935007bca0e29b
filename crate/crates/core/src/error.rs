use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum CycError {
    #[error("argument must be a positive integer")]
    ZeroArgument,

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: i64, n: u64 },

    #[error("{target} is not a multiple of {base}")]
    NotAMultiple { base: u64, target: u64 },

    #[error("K_{sub} is not a subfield of K_{sup}")]
    NotASubfield { sub: u64, sup: u64 },

    #[error("coefficient vector has length {got}, expected phi({n}) = {expected}")]
    BadCoefficientLength { n: u64, got: usize, expected: usize },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("a generated point lies exactly on the window boundary; change the window shift")]
    WindowBoundaryIncidence,

    #[error("enumeration box too large ({0} candidates); reduce the radius")]
    SearchSpaceTooLarge(u128),

    #[error("sign of a nonzero value could not be resolved at maximum precision")]
    SignUndecided,

    #[error("search budget exhausted; result is inconclusive")]
    Inconclusive,

    #[error("i/o or serialization failure: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, CycError>;
