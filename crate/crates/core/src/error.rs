use thiserror::Error;

/// Errors raised by the invariant pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order must be at least 1")]
    InvalidTruncation,

    #[error(
        "divisor machinery is undefined at 0; degree-0 queries use the constant-map invariant"
    )]
    ZeroArgument,

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("Chern character system has no integral solution: {0}")]
    UnsolvableNormalization(String),

    #[error("invalid Quot component: {0}")]
    InvalidComponent(String),

    #[error("Quot component with u = ({u1}, {u2}) for rank {r} is outside the analysed cases u1 = 0 and u1 = r - 1")]
    UnsupportedComponent { r: u32, u1: i64, u2: i64 },

    #[error("degenerate quotient class (k = 0)")]
    DegenerateQuotient,

    #[error("unsupported query: {0}")]
    Unsupported(String),

    #[error("routes disagree: closed form {closed}, wall-crossing {oracle}")]
    RouteDisagreement { closed: String, oracle: String },

    #[error("series is not invertible (zero constant term)")]
    NotInvertible,

    #[error("series logarithm requires constant term 1")]
    LogDomain,

    #[error("series exponential requires constant term 0")]
    ExpDomain,
}

pub type Result<T> = std::result::Result<T, Error>;
