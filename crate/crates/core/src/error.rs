use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact integer result would exceed the supported range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The value is below the smallest normal double; `ln_value` carries it.
    #[error("underflow: ln(value) = {ln_value}")]
    Underflow { ln_value: f64 },

    /// Two estimates that should agree did not.
    #[error("no convergence: estimate {estimate}, check {check} (tolerance {tolerance})")]
    NonConvergence {
        estimate: f64,
        check: f64,
        tolerance: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
