use thiserror::Error;

/// Whether an error was caused by bad input or by a solver that could not
/// certify its answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Solver,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column} (expected one of {allowed})")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
        allowed: String,
    },
    #[error("polynomial has a term with a negative exponent: {0}")]
    NegativeExponentInput(String),
    #[error("extension polynomial has a term with negative u-exponent: {0}")]
    NegativeUExponent(String),
    #[error("extension polynomial has a nonzero u^0 part ({0}); the splitting type would not be j")]
    NonzeroDivisorRestriction(String),
    #[error("curve does not pass through the origin (constant term {0})")]
    CurveMissesOrigin(String),
    #[error("the zero polynomial does not define a curve germ")]
    ZeroCurve,
    #[error("singularity at the origin is not isolated (colength not certified up to degree {cap})")]
    NonIsolatedSingularity { cap: usize },
    #[error("germ is not reduced: {0}")]
    NonReducedGerm(String),
    #[error("branch counting needs a repeated root of an irreducible factor of degree {degree} (field extension recursion is unsupported)")]
    ExtensionFieldRecursionUnsupported { degree: usize },
    #[error("delta parity violation: mu + r - 1 = {0} is odd")]
    ParityViolation(i64),
    #[error("{quantity} did not stabilize within the window schedule (last window i_max = {last_i_max}, values {values:?})")]
    StabilizationFailure {
        quantity: &'static str,
        last_i_max: i32,
        values: Vec<usize>,
    },
    #[error("computed numbers violate a proven bound: {0}")]
    BoundViolation(String),
    #[error("exhaustive grid of {size} points exceeds the cap of {cap}")]
    InfeasibleGrid { size: u128, cap: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::StabilizationFailure { .. }
            | Error::BoundViolation(_)
            | Error::ExtensionFieldRecursionUnsupported { .. }
            | Error::ParityViolation(_) => ErrorKind::Solver,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
