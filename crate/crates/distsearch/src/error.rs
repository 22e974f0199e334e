use std::fmt;

/// Error type shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid argument or malformed input data.
    InvalidInput(String),
    /// Cost model incompatible with the given topology (e.g. an
    /// asymmetric line cost applied to a non-path tree).
    ModelMismatch(String),
    /// Instance exceeds a configured size limit.
    SizeLimit(String),
    /// Malformed serialized data.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::ModelMismatch(msg) => write!(f, "model/topology mismatch: {msg}"),
            Error::SizeLimit(msg) => write!(f, "size limit exceeded: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl Error {
    /// Process exit code for the CLI: 2 for bad input, 3 for size refusals.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
