use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("BS({n},{m}) needs n and m nonzero")]
    ZeroParameter { n: i64, m: i64 },

    #[error("BS({n},{m}) does not satisfy 2 <= n <= |m|")]
    StandingHypothesis { n: i64, m: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element {0} is hyperbolic")]
    Hyperbolic(String),

    #[error("internal check failed: {0}")]
    InternalCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
