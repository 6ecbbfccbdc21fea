use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomials belong to different rings ({0} vs {1})")]
    RingMismatch(String, String),

    #[error("the zero polynomial has no bidegree")]
    ZeroPolynomial,

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("ring is not standard graded: {0}")]
    NonStandardGrading(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("genericity exhausted after {attempts} attempts: {context}")]
    GenericityExhausted { attempts: usize, context: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("mathematical assertion failed: {0}")]
    Assertion(String),
}

impl Error {
    /// True for failures that indicate an internal inconsistency rather than bad input.
    pub fn is_assertion(&self) -> bool {
        matches!(self, Error::Assertion(_))
    }
}
