use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("recurrence order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),

    #[error("backward iteration needs a trailing coefficient of +1 or -1, got {0}")]
    NonUnitTrailingCoefficient(BigInt),

    #[error("{what} index {index} outside {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("gamma-function ratio has a pole: {0}")]
    Pole(String),

    #[error("series did not reach tolerance within {terms} terms")]
    ConvergenceBudgetExceeded { terms: usize },

    #[error("precision of {digits} digits is not enough to resolve index {n} to an integer")]
    PrecisionExhausted { n: i64, digits: u32 },

    #[error("denominator (k+1)z - 2k vanishes for root {0}")]
    DegenerateDenominator(usize),

    #[error("precision must be at least {min} decimal digits, got {got}")]
    InvalidPrecision { got: u32, min: u32 },

    #[error("method `{method}` cannot evaluate this request: {reason}")]
    Unsupported { method: String, reason: String },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

impl Error {
    /// True for failures that more working precision could cure.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExhausted { .. }
                | Error::ConvergenceBudgetExceeded { .. }
                | Error::DegenerateDenominator(_)
        )
    }
}
