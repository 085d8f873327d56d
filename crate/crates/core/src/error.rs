use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the operation's domain.
    Domain(String),
    /// The integrand or summand produced a non-finite value.
    NonFinite { x: f64 },
    /// A precondition on the input (monotonicity, alternation, ...) failed.
    Contract(String),
    /// Requested fixture or operation does not exist.
    Unknown(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::NonFinite { x } => write!(f, "non-finite value at x = {x:e}"),
            Error::Contract(m) => write!(f, "contract violated: {m}"),
            Error::Unknown(m) => write!(f, "unknown: {m}"),
        }
    }
}

impl core::error::Error for Error {}
