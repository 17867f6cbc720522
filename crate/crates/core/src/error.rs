use thiserror::Error;

use crate::extnum::ExtInt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("lcm requires finite arguments >= 1, got {0} and {1}")]
    InvalidLcm(ExtInt, ExtInt),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("both operands are {value} at t = {t}")]
    CommonInfinity { t: i64, value: ExtInt },

    #[error("{0}")]
    Precondition(String),
}
