use thiserror::Error;

/// Errors raised by channel construction, coefficient evaluation and order decisions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("value {value} outside the valid range {range}")]
    OutOfRange { value: f64, range: &'static str },

    #[error("row {row}: {reason}")]
    NotStochastic { row: usize, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("channel is not BISO: {0}")]
    NotBiso(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: {reason}")]
    InvalidChannel { line: usize, reason: String },

    #[error("divergence is infinite")]
    InfiniteDivergence,

    #[error("parameter {0} must lie strictly inside (0, 1)")]
    DegenerateParameter(f64),

    #[error("channels belong to different classes: {first} vs {second}")]
    ClassMismatch { first: f64, second: f64 },

    #[error("channel has {0} outputs, at most 3 supported")]
    DimensionTooLarge(usize),

    #[error("maximal leakage {0} nats outside (0, ln 2)")]
    LeakageOutOfRange(f64),

    #[error("generator is unbounded at 0")]
    InfiniteF0,

    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    #[error("invalid variable bounds at index {0}")]
    InvalidBounds(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
