use crate::expansion::Expansion;
use crate::rational::ExactRational;
use thiserror::Error;

/// Crate-wide error type.
///
/// `PrecisionExhausted` carries the partial expansion computed before the
/// interval enclosure became too wide to certify the next digit, so callers
/// can still report the digits that were certified.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("base must be an integer >= 2, got {0}")]
    InvalidBase(u32),

    #[error("digit value must be >= -1, got {0}")]
    InvalidDigit(i64),

    #[error("value {value} lies outside [0, {base}] accepted for base {base}")]
    OutOfDomain { value: ExactRational, base: u32 },

    #[error("the digit of zero is infinite")]
    InfiniteDigit,

    #[error("interval precision exhausted after {} certified digits", partial.digits().len())]
    PrecisionExhausted { partial: Box<Expansion> },

    #[error("interval endpoints out of order: {lo} > {hi}")]
    EmptyInterval {
        lo: ExactRational,
        hi: ExactRational,
    },

    #[error("cannot invert an interval enclosing zero")]
    IntervalContainsZero,

    #[error("digit sequence must be nonempty")]
    EmptyDigits,

    #[error("depth {requested} out of range, only {available} available")]
    DepthOutOfRange { requested: usize, available: usize },

    #[error("operation needs an exact remainder but only an interval is held")]
    RemainderUnavailable,

    #[error("value {value} lies outside (0, 1)")]
    RcfDomain { value: ExactRational },

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
