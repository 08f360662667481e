use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("inexact division: coordinate {0} is not divisible by {1}")]
    InexactDivision(String, u32),
    #[error("order exhausted: {0}")]
    OrderExhausted(String),
    #[error("argument not in maximal ideal (constant term must be 0)")]
    NotInMaximalIdeal,
    #[error("argument not in 1+m (constant term must be 1)")]
    NotInOnePlusM,
    #[error("not a shuffle unit (constant term is 0)")]
    NotShuffleUnit,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("insufficient order: need at least {required}, have {available}")]
    InsufficientOrder { required: usize, available: usize },
    #[error("budget exhausted: no verified candidate with budget <= {0}")]
    BudgetExhausted(usize),
    #[error("kernel dimension exceeds bound {0} (series may be non-algebraic or order too small)")]
    KernelDimensionExceeded(usize),
    #[error("zero series rejected: {0}")]
    ZeroSeries(&'static str),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("alphabet mismatch: {0} vs {1} letters")]
    AlphabetMismatch(usize, usize),
    #[error("degree budget violated: {0}")]
    DegreeBudget(String),
    #[error("denominator vanishes at 0")]
    NotPowerSeries,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by malformed input rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidField(_))
    }
}
