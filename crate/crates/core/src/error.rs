use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("commutation parameter p({0},{1}) must be nonzero")]
    ZeroParameter(usize, usize),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("`{0}` is not a monomial")]
    NotAMonomial(String),
    #[error("degree bound too low: need {needed}, ideal is only known up to degree {available}")]
    DegreeBoundTooLow { needed: u32, available: u32 },
    #[error("a closed subcategory needs an exact ideal; this one is known only up to degree {0}")]
    InexactIdeal(u32),
    #[error("saturation did not reach a fixpoint within {0} iterations")]
    IterationCapExceeded(usize),
    #[error("structure constants are not associative on (b{0}, b{1}, b{2})")]
    NotAssociative(usize, usize, usize),
    #[error("the given unit does not act as identity")]
    NoUnit,
    #[error("bad idempotent decomposition: {0}")]
    BadIdempotents(String),
    #[error("enumeration requires a finite field")]
    InfiniteFieldUnsupported,
    #[error("enumeration refused: {count} candidates exceed the bound {bound}")]
    CombinatorialBlowup { count: u128, bound: u128 },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid filter system: {0}")]
    InvalidFilterSystem(String),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("denominator {0} is not invertible in the prime field")]
    NonUnitDenominatorInGF(String),
    #[error("ring spec error at `{path}`: {message}")]
    Spec { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
}

impl Error {
    pub(crate) fn spec(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Spec { path: path.into(), message: message.into() }
    }
}
